#pragma once

#include <string>

namespace dimtrunc {

// Symmetric positive weight on the integers, used by the series kernels.
enum class Weight { PolynomialDecay, GeometricDecay };

struct WeightFunction {
  Weight kind = Weight::GeometricDecay;
  double alpha = 2.0;  // weight(h) = max(1,|h|)^{-2 alpha}
  double q = 0.5;      // weight(h) = q^{|h|}

  static WeightFunction polynomial(double alpha);
  static WeightFunction geometric(double q);

  double operator()(long long h) const;
  std::string name() const;
};

// sum_{h>H} weight(h); exact for geometric weights, Euler-Maclaurin for
// polynomial ones.
double weight_tail(const WeightFunction& w, long long H);

enum class Kernel {
  FractionalWiener,  // (|x|^2b + |y|^2b - |x-y|^2b)/2 on R
  RFoldedWiener,     // int_0^min(x,y) (x-t)^{r-1}(y-t)^{r-1} dt /((r-1)!)^2 on R+
  TwoSidedRFolded,   // 0 when xy < 0, else the r-folded kernel at (|x|,|y|)
  Korobov,           // w(0) + 2 sum_h w(h) cos(2 pi h (x-y)), periodic
  Hermite,           // sum_l w(l) H_l(x) H_l(y), normalized Hermite basis
};

struct KernelSpec {
  Kernel kind = Kernel::FractionalWiener;
  double beta = 0.5;       // FractionalWiener smoothness, in (0,1)
  int r = 2;               // fold count, >= 2
  WeightFunction weight;   // Korobov / Hermite
  int series_cap = 0;      // number of series terms beyond l=0 / h=0
  double tail_tol = 1e-12; // certified series truncation budget
  double env_radius = 4.0; // |x| envelope the Hermite cap is certified for

  static KernelSpec fractional_wiener(double beta);
  static KernelSpec r_folded(int r);
  static KernelSpec two_sided(int r);
  // Series caps are derived from tail_tol at construction and recorded here.
  static KernelSpec korobov(WeightFunction w, double tail_tol = 1e-12);
  static KernelSpec hermite(WeightFunction w, double tail_tol = 1e-12,
                            double env_radius = 4.0);

  std::string name() const;
  std::string domain_name() const;
};

double eval(const KernelSpec& kernel, double x, double y);

// K(x,x) + K(y,y) - 2K(x,y), the squared kernel-induced distance. Small
// negative round-off (within 1e-12 on the kernel's own scale) clamps to 0.
double sq_distance(const KernelSpec& kernel, double x, double y);

// Normalized (probabilists') Hermite polynomial by the stable three-term
// recurrence H_{l+1}(x) = (x H_l(x) - sqrt(l) H_{l-1}(x)) / sqrt(l+1).
double hermite_poly(int l, double x);

// sqrt(sum_{h>=1} h^2 weight(h)); requires alpha > 3/2 for polynomial decay.
double korobov_curvature(const WeightFunction& w);

// sum_{l>=1} weight(l) l^{11/6}; requires 2 alpha > 17/6 for polynomial decay.
double hermite_weight_sum(const WeightFunction& w);

// Smallest series caps meeting the truncation budget (exposed for tests
// and output metadata).
int korobov_series_cap(const WeightFunction& w, double tail_tol);
int hermite_series_cap(const WeightFunction& w, double tail_tol,
                       double env_radius);

}  // namespace dimtrunc
