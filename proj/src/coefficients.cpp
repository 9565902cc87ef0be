#include "dimtrunc/coefficients.hpp"

#include <cmath>

#include "dimtrunc/errors.hpp"

namespace dimtrunc {

CoefficientSequence CoefficientSequence::power(double a) {
  if (!(a > 1.0)) {
    throw ArgumentError("power-law sequence requires decay exponent a > 1");
  }
  CoefficientSequence s;
  s.power_law = true;
  s.decay = a;
  return s;
}

CoefficientSequence CoefficientSequence::finite(std::vector<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw ArgumentError("finite sequence entries must be finite");
    }
  }
  CoefficientSequence s;
  s.power_law = false;
  s.values = std::move(values);
  return s;
}

bool CoefficientSequence::all_nonnegative() const {
  if (power_law) return true;
  for (double v : values) {
    if (v < 0.0) return false;
  }
  return true;
}

std::string CoefficientSequence::name() const {
  if (power_law) return "power_law(a=" + std::to_string(decay) + ")";
  return "finite_list(n=" + std::to_string(values.size()) + ")";
}

double xi(const CoefficientSequence& seq, long long j) {
  if (j < 1) throw ArgumentError("xi: index must be >= 1");
  if (seq.power_law) return std::pow(static_cast<double>(j), -seq.decay);
  if (j > static_cast<long long>(seq.values.size())) return 0.0;
  return seq.values[static_cast<std::size_t>(j - 1)];
}

double power_tail_sum(double a, long long k) {
  if (!(a > 1.0)) throw ArgumentError("power_tail_sum: requires a > 1");
  if (k < 0) throw ArgumentError("power_tail_sum: k must be >= 0");

  // Sum directly up to n-1, then close with Euler-Maclaurin at n. With
  // n >= 2048 the B8 term bounding the truncation is ~n^-8 relative.
  const long long n = std::max<long long>(k + 1, 2048);
  double direct = 0.0;
  for (long long j = n - 1; j > k; --j) {
    direct += std::pow(static_cast<double>(j), -a);
  }
  const double x = static_cast<double>(n);
  const double f = std::pow(x, -a);
  double tail = f * x / (a - 1.0);        // integral from n
  tail += 0.5 * f;                        // trapezoidal endpoint
  tail += a * f / (12.0 * x);             // B2 correction
  tail -= a * (a + 1.0) * (a + 2.0) * f / (720.0 * x * x * x);
  tail += a * (a + 1.0) * (a + 2.0) * (a + 3.0) * (a + 4.0) * f /
          (30240.0 * x * x * x * x * x);
  return direct + tail;
}

double zeta(double a) {
  if (!(a > 1.0)) throw ArgumentError("zeta: requires a > 1");
  return power_tail_sum(a, 0);
}

namespace {

double finite_tail(const std::vector<double>& values, long long k, bool absolute,
                   bool squared) {
  double sum = 0.0;
  for (std::size_t i = static_cast<std::size_t>(std::max<long long>(k, 0));
       i < values.size(); ++i) {
    const double v = values[i];
    sum += squared ? v * v : (absolute ? std::abs(v) : v);
  }
  return sum;
}

}  // namespace

double tail_abs_sum(const CoefficientSequence& seq, long long k) {
  if (k < 0) throw ArgumentError("tail_abs_sum: k must be >= 0");
  if (seq.power_law) return power_tail_sum(seq.decay, k);
  return finite_tail(seq.values, k, /*absolute=*/true, /*squared=*/false);
}

double tail_signed_sum(const CoefficientSequence& seq, long long k) {
  if (k < 0) throw ArgumentError("tail_signed_sum: k must be >= 0");
  if (seq.power_law) return power_tail_sum(seq.decay, k);  // positive terms
  return finite_tail(seq.values, k, /*absolute=*/false, /*squared=*/false);
}

double tail_sq_sum(const CoefficientSequence& seq, long long k) {
  if (k < 0) throw ArgumentError("tail_sq_sum: k must be >= 0");
  if (seq.power_law) return power_tail_sum(2.0 * seq.decay, k);
  return finite_tail(seq.values, k, /*absolute=*/false, /*squared=*/true);
}

std::pair<double, double> tail_bracket(double a, long long k) {
  if (!(a > 1.0)) throw ArgumentError("tail_bracket: requires a > 1");
  if (k < 0) throw ArgumentError("tail_bracket: k must be >= 0");
  const double lo = 1.0 / ((a - 1.0) * std::pow(k + 1.0, a - 1.0));
  const double hi = 1.0 / ((a - 1.0) * std::pow(k + 0.5, a - 1.0));
  return {lo, hi};
}

}  // namespace dimtrunc
