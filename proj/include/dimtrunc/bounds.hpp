#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dimtrunc/coefficients.hpp"
#include "dimtrunc/kernels.hpp"
#include "dimtrunc/measures.hpp"

namespace dimtrunc {

// Holder continuity class: |g(x)-g(y)| <= C ||g|| |x-y|^beta.
struct HolderClass {
  double C = 1.0;
  double beta = 1.0;

  static HolderClass make(double C, double beta);
  std::string name() const;
};

// Stable tags naming the formula a bound value came from (CSV schema).
enum class FormulaId {
  FR1,        // (m1 * abs tail)^(2 beta), beta <= 1/2
  GEN_BETA,   // ((mean * signed tail)^2 + var * sq tail)^beta
  ZERO_MEAN,  // the same with mean = 0: (m2 * sq tail)^beta
  POWER_M,    // C(M) * (abs tail)^M
  RFOLD_B,    // r-folded kernel, bounded-sup form
  RFOLD_U,    // r-folded kernel, moment form
  TWOSIDED_B,
  TWOSIDED_U,
  KOROBOV,
  HERMITE_B,  // bounded exp(Y_abs^2/2) form
  HERMITE_S,  // Cauchy-Schwarz split form
};

std::string to_string(FormulaId id);

struct BoundReport {
  long long k = 0;
  double value = 0.0;
  FormulaId formula = FormulaId::GEN_BETA;
  std::vector<std::string> assumptions;
  std::vector<std::pair<std::string, std::string>> inputs;
};

struct MomentBound {
  double value = 0.0;
  FormulaId formula = FormulaId::GEN_BETA;
};

// Best certified bound on E|Y - Y_k|^(2 beta) for beta in (0,1]: the
// minimum over the applicable candidates, tagged with the winner.
MomentBound holder_moment_bound(const MeasureSpec& measure,
                                const CoefficientSequence& seq, long long k,
                                double beta);

BoundReport holder_error_bound(const HolderClass& holder,
                               const MeasureSpec& measure,
                               const CoefficientSequence& seq, long long k);

// Holder parameters of the W^{1,p}-type spaces: C = 1, beta = 1/p*
// with 1/p + 1/p* = 1 (p = inf gives beta = 1).
HolderClass gp_space_params(double p);

// C(M) * (abs tail)^M, bounding E|Y - Y_k|^M for integer M >= 1.
double power_moment_bound(const MeasureSpec& measure,
                          const CoefficientSequence& seq, long long k, int M);

// [1/(2r-1) + (r-1)^2/(2r-3)]^{1/2} / (r-1)!  and its simpler upper
// envelope sqrt(2r/3)/(r-1)!.
double fold_constant(int r);
double fold_constant_upper(int r);

enum class FoldMode { Bounded, Unbounded };
enum class HermiteMode { BoundedExp, SplitExp };

std::string to_string(FoldMode mode);
std::string to_string(HermiteMode mode);

// Truncation error bound for the r-folded kernel. Bounded mode needs a
// certified sup of Y (uniform01 coordinates only); Unbounded uses moment
// constants. Requires nonnegative coordinates and coefficients.
BoundReport rfolded_bound(const MeasureSpec& measure,
                          const CoefficientSequence& seq, long long k, int r,
                          FoldMode mode);

// Two-sided variant: any coordinate measure; coefficient tails enter in
// absolute value. Bounded mode needs a certified sup of Y_abs
// (uniform01 or uniform_sym coordinates).
BoundReport twosided_bound(const MeasureSpec& measure,
                           const CoefficientSequence& seq, long long k, int r,
                           FoldMode mode);

BoundReport korobov_bound(const MeasureSpec& measure,
                          const CoefficientSequence& seq, long long k,
                          const WeightFunction& weight);

// Monte Carlo estimate of E exp((Y_abs)^2), required by the split form.
struct ExpMomentEstimate {
  double value = 1.0;
  double std_error = 0.0;
  long long n = 0;
};

BoundReport hermite_bound(const MeasureSpec& measure,
                          const CoefficientSequence& seq, long long k,
                          const WeightFunction& weight, HermiteMode mode,
                          const std::optional<ExpMomentEstimate>& exp_moment =
                              std::nullopt);

}  // namespace dimtrunc
