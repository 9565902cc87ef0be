#include "dimtrunc/kernels.hpp"

#include <cmath>

#include "dimtrunc/coefficients.hpp"
#include "dimtrunc/errors.hpp"
#include "dimtrunc/quadrature.hpp"

namespace dimtrunc {

WeightFunction WeightFunction::polynomial(double alpha) {
  if (!(alpha > 0.0)) throw ArgumentError("weight: alpha must be > 0");
  WeightFunction w;
  w.kind = Weight::PolynomialDecay;
  w.alpha = alpha;
  return w;
}

WeightFunction WeightFunction::geometric(double q) {
  if (!(q > 0.0 && q < 1.0)) throw ArgumentError("weight: q must be in (0,1)");
  WeightFunction w;
  w.kind = Weight::GeometricDecay;
  w.q = q;
  return w;
}

double WeightFunction::operator()(long long h) const {
  const double habs = static_cast<double>(h < 0 ? -h : h);
  if (kind == Weight::PolynomialDecay) {
    return habs < 1.0 ? 1.0 : std::pow(habs, -2.0 * alpha);
  }
  return std::pow(q, habs);
}

std::string WeightFunction::name() const {
  if (kind == Weight::PolynomialDecay) {
    return "polynomial(alpha=" + std::to_string(alpha) + ")";
  }
  return "geometric(q=" + std::to_string(q) + ")";
}

double weight_tail(const WeightFunction& w, long long H) {
  if (H < 0) throw ArgumentError("weight_tail: H must be >= 0");
  if (w.kind == Weight::GeometricDecay) {
    return std::pow(w.q, static_cast<double>(H + 1)) / (1.0 - w.q);
  }
  if (!(2.0 * w.alpha > 1.0)) {
    throw ArgumentError("weight_tail: polynomial weight is not summable");
  }
  return power_tail_sum(2.0 * w.alpha, std::max<long long>(H, 0));
}

namespace {

double factorial(int n) {
  double p = 1.0;
  for (int v = 2; v <= n; ++v) p *= v;
  return p;
}

void require_rfold_order(int r) {
  if (r < 2 || r > 16) throw ArgumentError("fold count r must be in [2, 16]");
}

}  // namespace

KernelSpec KernelSpec::fractional_wiener(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw ArgumentError("fractional kernel: beta must be in (0,1)");
  }
  KernelSpec k;
  k.kind = Kernel::FractionalWiener;
  k.beta = beta;
  return k;
}

KernelSpec KernelSpec::r_folded(int r) {
  require_rfold_order(r);
  KernelSpec k;
  k.kind = Kernel::RFoldedWiener;
  k.r = r;
  return k;
}

KernelSpec KernelSpec::two_sided(int r) {
  require_rfold_order(r);
  KernelSpec k;
  k.kind = Kernel::TwoSidedRFolded;
  k.r = r;
  return k;
}

int korobov_series_cap(const WeightFunction& w, double tail_tol) {
  if (!(tail_tol > 0.0)) throw ArgumentError("tail_tol must be > 0");
  // The neglected part of the kernel is at most 2 sum_{h>H} weight(h).
  for (long long H = 4; H <= 2000000; H *= 2) {
    if (2.0 * weight_tail(w, H) <= tail_tol) {
      long long lo = H / 2, hi = H;
      while (lo + 1 < hi) {
        const long long mid = (lo + hi) / 2;
        if (2.0 * weight_tail(w, mid) <= tail_tol) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      return static_cast<int>(hi);
    }
  }
  throw ArgumentError("korobov: weight decays too slowly for tail_tol");
}

int hermite_series_cap(const WeightFunction& w, double tail_tol,
                       double env_radius) {
  if (!(tail_tol > 0.0)) throw ArgumentError("tail_tol must be > 0");
  if (!(env_radius > 0.0)) throw ArgumentError("env_radius must be > 0");
  // Via the Cramer-type bound, each neglected term at |x|,|y| <= X costs at
  // most pi sqrt(2 pi) e^{X^2/2} weight(l).
  const double scale =
      M_PI * std::sqrt(2.0 * M_PI) * std::exp(0.5 * env_radius * env_radius);
  for (long long L = 4; L <= 2000000; L *= 2) {
    if (scale * weight_tail(w, L) <= tail_tol) {
      long long lo = L / 2, hi = L;
      while (lo + 1 < hi) {
        const long long mid = (lo + hi) / 2;
        if (scale * weight_tail(w, mid) <= tail_tol) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      return static_cast<int>(hi);
    }
  }
  throw ArgumentError("hermite: weight decays too slowly for tail_tol");
}

KernelSpec KernelSpec::korobov(WeightFunction w, double tail_tol) {
  KernelSpec k;
  k.kind = Kernel::Korobov;
  k.weight = w;
  k.tail_tol = tail_tol;
  k.series_cap = korobov_series_cap(w, tail_tol);
  return k;
}

KernelSpec KernelSpec::hermite(WeightFunction w, double tail_tol,
                               double env_radius) {
  KernelSpec k;
  k.kind = Kernel::Hermite;
  k.weight = w;
  k.tail_tol = tail_tol;
  k.env_radius = env_radius;
  k.series_cap = hermite_series_cap(w, tail_tol, env_radius);
  return k;
}

std::string KernelSpec::name() const {
  switch (kind) {
    case Kernel::FractionalWiener:
      return "fractional_wiener(beta=" + std::to_string(beta) + ")";
    case Kernel::RFoldedWiener:
      return "r_folded(r=" + std::to_string(r) + ")";
    case Kernel::TwoSidedRFolded:
      return "two_sided(r=" + std::to_string(r) + ")";
    case Kernel::Korobov:
      return "korobov(" + weight.name() + ",cap=" + std::to_string(series_cap) + ")";
    case Kernel::Hermite:
      return "hermite(" + weight.name() + ",cap=" + std::to_string(series_cap) + ")";
  }
  return "?";
}

std::string KernelSpec::domain_name() const {
  switch (kind) {
    case Kernel::FractionalWiener: return "R";
    case Kernel::RFoldedWiener: return "R+";
    case Kernel::TwoSidedRFolded: return "R";
    case Kernel::Korobov: return "[0,1] periodic";
    case Kernel::Hermite: return "R";
  }
  return "?";
}

double hermite_poly(int l, double x) {
  if (l < 0) throw ArgumentError("hermite_poly: l must be >= 0");
  double prev = 1.0;  // H_0
  if (l == 0) return prev;
  double cur = x;  // H_1
  for (int m = 1; m < l; ++m) {
    const double next = (x * cur - std::sqrt(static_cast<double>(m)) * prev) /
                        std::sqrt(static_cast<double>(m + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

// r-point Gauss-Legendre on [0, min(x,y)]: the integrand is a polynomial of
// degree 2r-2, so the rule is exact.
double rfolded_eval(int r, double x, double y) {
  if (x < 0.0 || y < 0.0) {
    throw ArgumentError("r-folded kernel requires x, y >= 0");
  }
  const double m = std::min(x, y);
  if (m == 0.0) return 0.0;
  const GaussLegendreRule& rule = gauss_legendre_rule(r);
  double sum = 0.0;
  for (int i = 0; i < r; ++i) {
    const double t = 0.5 * m * (rule.nodes[i] + 1.0);
    sum += rule.weights[i] * std::pow(x - t, r - 1) * std::pow(y - t, r - 1);
  }
  const double fac = factorial(r - 1);
  return 0.5 * m * sum / (fac * fac);
}

double korobov_eval(const KernelSpec& k, double x, double y) {
  const double d = x - y;
  double sum = k.weight(0);
  for (int h = 1; h <= k.series_cap; ++h) {
    sum += 2.0 * k.weight(h) * std::cos(2.0 * M_PI * h * d);
  }
  return sum;
}

double hermite_eval(const KernelSpec& k, double x, double y) {
  // Joint three-term recurrence in both arguments.
  double px = 1.0, py = 1.0;  // H_0
  double sum = k.weight(0);
  double cx = x, cy = y;  // H_1
  for (int l = 1; l <= k.series_cap; ++l) {
    sum += k.weight(l) * cx * cy;
    const double sl = std::sqrt(static_cast<double>(l));
    const double sl1 = std::sqrt(static_cast<double>(l + 1));
    const double nx = (x * cx - sl * px) / sl1;
    const double ny = (y * cy - sl * py) / sl1;
    px = cx;
    cx = nx;
    py = cy;
    cy = ny;
  }
  if (!std::isfinite(sum)) {
    throw NumericError("hermite kernel overflow at x=" + std::to_string(x) +
                       ", y=" + std::to_string(y));
  }
  return sum;
}

}  // namespace

double eval(const KernelSpec& kernel, double x, double y) {
  switch (kernel.kind) {
    case Kernel::FractionalWiener: {
      const double tb = 2.0 * kernel.beta;
      return 0.5 * (std::pow(std::abs(x), tb) + std::pow(std::abs(y), tb) -
                    std::pow(std::abs(x - y), tb));
    }
    case Kernel::RFoldedWiener:
      return rfolded_eval(kernel.r, x, y);
    case Kernel::TwoSidedRFolded:
      if (x * y < 0.0) return 0.0;
      return rfolded_eval(kernel.r, std::abs(x), std::abs(y));
    case Kernel::Korobov:
      return korobov_eval(kernel, x, y);
    case Kernel::Hermite:
      return hermite_eval(kernel, x, y);
  }
  throw ArgumentError("eval: unknown kernel");
}

double sq_distance(const KernelSpec& kernel, double x, double y) {
  const double kxx = eval(kernel, x, x);
  const double kyy = eval(kernel, y, y);
  const double d = kxx + kyy - 2.0 * eval(kernel, x, y);
  if (d >= 0.0) return d;
  const double neg_tol = 1e-12 * std::max(1.0, kxx + kyy);
  if (d >= -neg_tol) return 0.0;
  throw NumericError("sq_distance: negative value " + std::to_string(d) +
                     " beyond rounding tolerance");
}

double korobov_curvature(const WeightFunction& w) {
  double sum;
  if (w.kind == Weight::GeometricDecay) {
    // sum_{h>=1} h^2 q^h = q (1+q) / (1-q)^3
    const double q = w.q;
    sum = q * (1.0 + q) / ((1.0 - q) * (1.0 - q) * (1.0 - q));
  } else {
    if (!(w.alpha > 1.5)) {
      throw ArgumentError("korobov curvature diverges: needs alpha > 3/2");
    }
    sum = zeta(2.0 * w.alpha - 2.0);
  }
  return std::sqrt(sum);
}

double hermite_weight_sum(const WeightFunction& w) {
  const double p = 11.0 / 6.0;
  if (w.kind == Weight::PolynomialDecay) {
    if (!(2.0 * w.alpha > 17.0 / 6.0)) {
      throw ArgumentError("hermite weight sum diverges: needs 2 alpha > 17/6");
    }
    return zeta(2.0 * w.alpha - p);
  }
  // Geometric: sum l^{11/6} q^l with a ratio-certified remainder.
  double sum = 0.0;
  double term = w.q;  // l = 1
  for (long long l = 1; l <= 1000000; ++l) {
    sum += term;
    const double ratio =
        w.q * std::pow((l + 1.0) / static_cast<double>(l), p);
    term = std::pow(static_cast<double>(l + 1), p) *
           std::pow(w.q, static_cast<double>(l + 1));
    if (ratio < 1.0 && term / (1.0 - ratio) <= 1e-15 * sum) {
      return sum + term / (1.0 - ratio) * 0.5;
    }
  }
  throw NumericError("hermite weight sum did not converge");
}

}  // namespace dimtrunc
