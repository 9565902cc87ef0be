#include "dimtrunc/measures.hpp"

#include <cmath>
#include <functional>

#include "dimtrunc/errors.hpp"
#include "dimtrunc/quadrature.hpp"

namespace dimtrunc {

MeasureSpec MeasureSpec::uniform01() { return {Measure::Uniform01}; }
MeasureSpec MeasureSpec::uniform_sym() { return {Measure::UniformSym}; }

MeasureSpec MeasureSpec::exponential(double lambda) {
  if (!(lambda > 0.0)) throw ArgumentError("exponential: lambda must be > 0");
  return {Measure::Exponential, lambda};
}

MeasureSpec MeasureSpec::logistic(double lambda) {
  if (!(lambda > 0.0)) throw ArgumentError("logistic: lambda must be > 0");
  return {Measure::Logistic, lambda};
}

MeasureSpec MeasureSpec::gaussian(double sigma2) {
  if (!(sigma2 > 0.0)) throw ArgumentError("gaussian: sigma2 must be > 0");
  MeasureSpec m{Measure::Gaussian};
  m.sigma2 = sigma2;
  return m;
}

std::string MeasureSpec::name() const {
  switch (kind) {
    case Measure::Uniform01: return "uniform01";
    case Measure::UniformSym: return "uniform_sym";
    case Measure::Exponential: return "exponential(lambda=" + std::to_string(lambda) + ")";
    case Measure::Logistic: return "logistic(lambda=" + std::to_string(lambda) + ")";
    case Measure::Gaussian: return "gaussian(sigma2=" + std::to_string(sigma2) + ")";
  }
  return "?";
}

double double_factorial(int k) {
  if (k < 0) throw ArgumentError("double_factorial: k must be >= 0");
  double p = 1.0;
  for (int v = k; v >= 2; v -= 2) p *= v;
  return p;  // k in {0,1} falls through to the empty product
}

namespace {

double factorial(int n) {
  double p = 1.0;
  for (int v = 2; v <= n; ++v) p *= v;
  return p;
}

// E|x|^r for the logistic scale-1 measure: 2 int_0^inf t^r e^-t (1+e^-t)^-2 dt,
// integrated on [0, 40+5r] with the upper-incomplete-gamma remainder
// 2 r! e^-S sum_i S^i/i! certified against the target tolerance.
double logistic_abs_moment_unit(int r) {
  const double S = 40.0 + 5.0 * r;
  const double rel_target = 1e-11;
  auto integrand = [r](double t) {
    const double e = std::exp(-t);
    return std::pow(t, r) * e / ((1.0 + e) * (1.0 + e));
  };
  QuadratureResult q = integrate_adaptive(integrand, 0.0, S, rel_target);
  double tail_series = 0.0, term = 1.0;
  for (int i = 0; i <= r; ++i) {
    tail_series += term;
    term *= S / (i + 1);
  }
  const double remainder = factorial(r) * std::exp(-S) * tail_series;
  const double value = 2.0 * q.value;
  if (remainder > rel_target * value) {
    throw NumericError("logistic moment: truncation remainder " +
                       std::to_string(remainder / value) + " above target");
  }
  return value + remainder;  // midpoint-free: remainder is positive and tiny
}

}  // namespace

double moment_abs(const MeasureSpec& measure, int r) {
  if (r < 1) throw ArgumentError("moment_abs: r must be >= 1");
  switch (measure.kind) {
    case Measure::Uniform01:
      return 1.0 / (r + 1);
    case Measure::UniformSym:
      return std::ldexp(1.0 / (r + 1), -r);
    case Measure::Exponential:
      return std::pow(measure.lambda, r) * factorial(r);
    case Measure::Logistic:
      return std::pow(measure.lambda, r) * logistic_abs_moment_unit(r);
    case Measure::Gaussian: {
      const double sigma = std::sqrt(measure.sigma2);
      if (r % 2 == 0) {
        return std::pow(sigma, r) * double_factorial(r - 1);
      }
      return std::pow(sigma, r) * std::sqrt(2.0 / M_PI) * double_factorial(r - 1);
    }
  }
  throw ArgumentError("moment_abs: unknown measure");
}

double mean(const MeasureSpec& measure) {
  switch (measure.kind) {
    case Measure::Uniform01: return 0.5;
    case Measure::UniformSym: return 0.0;
    case Measure::Exponential: return measure.lambda;
    case Measure::Logistic: return 0.0;
    case Measure::Gaussian: return 0.0;
  }
  throw ArgumentError("mean: unknown measure");
}

double variance(const MeasureSpec& measure) {
  switch (measure.kind) {
    case Measure::Uniform01: return 1.0 / 12.0;
    case Measure::UniformSym: return 1.0 / 12.0;
    case Measure::Exponential: return measure.lambda * measure.lambda;
    case Measure::Logistic:
      return measure.lambda * measure.lambda * M_PI * M_PI / 3.0;
    case Measure::Gaussian: return measure.sigma2;
  }
  throw ArgumentError("variance: unknown measure");
}

namespace {

// Walk all partitions of `remaining` with parts <= max_part, keeping the
// running moment product; records the best complete product seen.
void max_partition_product(const std::vector<double>& moments, int remaining,
                           int max_part, double product, double& best) {
  if (remaining == 0) {
    if (product > best) best = product;
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    max_partition_product(moments, remaining - part, part,
                          product * moments[part], best);
  }
}

}  // namespace

double c_constant_enum(const MeasureSpec& measure, int M) {
  if (M < 1 || M > 24) {
    throw ArgumentError("c_constant_enum: M must be in [1, 24]");
  }
  std::vector<double> moments(M + 1, 0.0);
  for (int r = 1; r <= M; ++r) moments[r] = moment_abs(measure, r);
  double best = 0.0;
  max_partition_product(moments, M, M, 1.0, best);
  return best;
}

BoundValue c_constant_closed(const MeasureSpec& measure, int M) {
  if (M < 1) throw ArgumentError("c_constant_closed: M must be >= 1");
  BoundValue out;
  switch (measure.kind) {
    case Measure::Uniform01:
      out.kind = BoundKind::Exact;
      out.value = 1.0 / (M + 1);
      return out;
    case Measure::UniformSym:
      out.kind = BoundKind::Exact;
      out.value = std::ldexp(1.0 / (M + 1), -M);
      return out;
    case Measure::Exponential:
      out.kind = BoundKind::Exact;
      out.value = std::pow(measure.lambda, M) * factorial(M);
      return out;
    case Measure::Logistic: {
      out.kind = BoundKind::Interval;
      const double base = std::pow(measure.lambda, M) * factorial(M);
      out.lo = 0.5 * base;
      out.hi = 2.0 * base;
      return out;
    }
    case Measure::Gaussian:
      out.kind = BoundKind::UpperBound;
      out.value = std::pow(std::sqrt(measure.sigma2), M) * double_factorial(M - 1);
      return out;
  }
  throw ArgumentError("c_constant_closed: unknown measure");
}

double c_constant_upper(const MeasureSpec& measure, int M) {
  if (M < 1) throw ArgumentError("c_constant_upper: M must be >= 1");
  if (M <= 24) return c_constant_enum(measure, M);
  return c_constant_closed(measure, M).upper();
}

namespace {

// PPND16 rational approximation of the standard normal quantile
// (Wichura, Applied Statistics 37, 1988), |error| ~ 1e-16.
double normal_quantile(double p) {
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
              6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
            1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
          1.3314166789178437745e2) * r + 3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
            5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
          4.2313330701600911252e1) * r + 1.0);
    return q * num / den;
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
    value = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    value = num / den;
  }
  return (q < 0.0) ? -value : value;
}

}  // namespace

double sample_one(const MeasureSpec& measure, RngStream& rng) {
  const double u = rng.next_unit();  // strictly inside (0,1)
  switch (measure.kind) {
    case Measure::Uniform01: return u;
    case Measure::UniformSym: return u - 0.5;
    case Measure::Exponential: return -measure.lambda * std::log(u);
    case Measure::Logistic: return measure.lambda * std::log(u / (1.0 - u));
    case Measure::Gaussian:
      return std::sqrt(measure.sigma2) * normal_quantile(u);
  }
  throw ArgumentError("sample_one: unknown measure");
}

std::vector<double> sample(const MeasureSpec& measure, RngStream& rng,
                           std::size_t n) {
  if (n < 1) throw ArgumentError("sample: n must be >= 1");
  std::vector<double> out(n);
  for (double& x : out) x = sample_one(measure, rng);
  return out;
}

}  // namespace dimtrunc
