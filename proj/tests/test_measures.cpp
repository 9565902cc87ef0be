#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dimtrunc/errors.hpp"
#include "dimtrunc/measures.hpp"
#include "dimtrunc/rng.hpp"
#include "oracles.hpp"

using namespace dimtrunc;

namespace {

// Independent absolute-moment oracle: adaptive Simpson over the density.
double moment_oracle(const MeasureSpec& m, int r) {
  std::function<double(double)> f;
  double hi;
  switch (m.kind) {
    case Measure::Uniform01:
      f = [r](double x) { return std::pow(x, r); };
      hi = 1.0;
      break;
    case Measure::UniformSym:
      f = [r](double x) { return 2.0 * std::pow(x, r); };
      hi = 0.5;
      break;
    case Measure::Exponential:
      f = [r, &m](double x) {
        return std::pow(x, r) * std::exp(-x / m.lambda) / m.lambda;
      };
      hi = m.lambda * (80.0 + 6.0 * r);
      break;
    case Measure::Logistic:
      f = [r, &m](double x) {
        const double e = std::exp(-x / m.lambda);
        return 2.0 * std::pow(x, r) * e / (m.lambda * (1.0 + e) * (1.0 + e));
      };
      hi = m.lambda * (90.0 + 6.0 * r);
      break;
    case Measure::Gaussian: {
      const double sigma = std::sqrt(m.sigma2);
      f = [r, sigma](double x) {
        return 2.0 * std::pow(x, r) *
               std::exp(-x * x / (2.0 * sigma * sigma)) /
               (sigma * std::sqrt(2.0 * M_PI));
      };
      hi = sigma * (40.0 + 2.0 * r);
      break;
    }
  }
  const double rough = oracles::adaptive_simpson(f, 0.0, hi, 1e-6);
  return oracles::adaptive_simpson(f, 0.0, hi, std::abs(rough) * 1e-13);
}

}  // namespace

TEST_CASE("closed-form absolute moments") {
  CHECK(moment_abs(MeasureSpec::uniform01(), 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(moment_abs(MeasureSpec::exponential(2.0), 2) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(moment_abs(MeasureSpec::gaussian(1.0), 3) ==
        doctest::Approx(2.0 * std::sqrt(2.0 / M_PI)).epsilon(1e-13));
  CHECK_THROWS_AS(moment_abs(MeasureSpec::uniform01(), 0), ArgumentError);
  CHECK_THROWS_AS(moment_abs(MeasureSpec::uniform01(), -2), ArgumentError);
}

TEST_CASE("moments agree with the quadrature oracle") {
  const MeasureSpec measures[] = {
      MeasureSpec::uniform01(), MeasureSpec::uniform_sym(),
      MeasureSpec::exponential(1.5), MeasureSpec::logistic(0.7),
      MeasureSpec::gaussian(2.0)};
  for (const MeasureSpec& m : measures) {
    for (int r = 1; r <= 10; ++r) {
      const double val = moment_abs(m, r);
      const double ref = moment_oracle(m, r);
      CHECK(std::abs(val - ref) <= 1e-8 * std::abs(ref));
    }
  }
}

TEST_CASE("moment monotonicity in r") {
  const MeasureSpec expo = MeasureSpec::exponential(1.0);
  const MeasureSpec uni = MeasureSpec::uniform01();
  for (int r = 1; r < 10; ++r) {
    CHECK(moment_abs(expo, r + 1) > moment_abs(expo, r));
    CHECK(moment_abs(uni, r + 1) < moment_abs(uni, r));
  }
}

TEST_CASE("means and variances") {
  CHECK(mean(MeasureSpec::uniform_sym()) == 0.0);
  CHECK(variance(MeasureSpec::uniform_sym()) == doctest::Approx(1.0 / 12.0));
  CHECK(variance(MeasureSpec::gaussian(4.0)) == 4.0);
  CHECK(mean(MeasureSpec::uniform01()) == 0.5);
  CHECK(mean(MeasureSpec::exponential(3.0)) == 3.0);
  CHECK(variance(MeasureSpec::logistic(1.0)) ==
        doctest::Approx(M_PI * M_PI / 3.0));
}

TEST_CASE("double factorial") {
  CHECK(double_factorial(0) == 1.0);
  CHECK(double_factorial(1) == 1.0);
  CHECK(double_factorial(6) == 48.0);
  CHECK(double_factorial(7) == 105.0);
  CHECK_THROWS_AS(double_factorial(-1), ArgumentError);
}

TEST_CASE("moment-product constant by enumeration") {
  CHECK(c_constant_enum(MeasureSpec::uniform01(), 4) ==
        doctest::Approx(0.2).epsilon(1e-13));
  CHECK(c_constant_enum(MeasureSpec::gaussian(1.0), 4) ==
        doctest::Approx(3.0).epsilon(1e-13));
  for (const MeasureSpec& m :
       {MeasureSpec::uniform_sym(), MeasureSpec::exponential(0.8)}) {
    CHECK(c_constant_enum(m, 1) == doctest::Approx(moment_abs(m, 1)));
  }
  CHECK_THROWS_AS(c_constant_enum(MeasureSpec::uniform01(), 0), ArgumentError);
  CHECK_THROWS_AS(c_constant_enum(MeasureSpec::uniform01(), 25), ArgumentError);
}

TEST_CASE("enumerated constant vs closed forms, M <= 8") {
  for (int M = 1; M <= 8; ++M) {
    for (const MeasureSpec& m :
         {MeasureSpec::uniform01(), MeasureSpec::uniform_sym(),
          MeasureSpec::exponential(1.7)}) {
      const double e = c_constant_enum(m, M);
      const double c = c_constant_closed(m, M).value;
      CHECK(std::abs(e - c) <= 1e-12 * c);
    }
    const double le = c_constant_enum(MeasureSpec::logistic(1.2), M);
    const BoundValue lb = c_constant_closed(MeasureSpec::logistic(1.2), M);
    CHECK(le > lb.lo);
    CHECK(le < lb.hi);
    const double ge = c_constant_enum(MeasureSpec::gaussian(1.0), M);
    const double gu = c_constant_closed(MeasureSpec::gaussian(1.0), M).value;
    CHECK(ge <= gu * (1.0 + 1e-12));
    if (M % 2 == 0) CHECK(ge == doctest::Approx(gu).epsilon(1e-12));
  }
}

TEST_CASE("closed constants carry their knowledge class") {
  const BoundValue usym = c_constant_closed(MeasureSpec::uniform_sym(), 2);
  CHECK(usym.kind == BoundKind::Exact);
  CHECK(usym.value == doctest::Approx(1.0 / 12.0));

  const BoundValue logi = c_constant_closed(MeasureSpec::logistic(1.0), 3);
  CHECK(logi.kind == BoundKind::Interval);
  CHECK(logi.lo == doctest::Approx(3.0));
  CHECK(logi.hi == doctest::Approx(12.0));

  const BoundValue gauss = c_constant_closed(MeasureSpec::gaussian(1.0), 4);
  CHECK(gauss.kind == BoundKind::UpperBound);
  CHECK(gauss.value == doctest::Approx(3.0));
}

TEST_CASE("sampling is deterministic per (seed, stream)") {
  for (const MeasureSpec& m :
       {MeasureSpec::uniform01(), MeasureSpec::gaussian(1.0)}) {
    RngStream a(1234, 5);
    RngStream b(1234, 5);
    const auto xs = sample(m, a, 3);
    const auto ys = sample(m, b, 3);
    CHECK(xs == ys);
    RngStream c(1234, 6);
    CHECK(sample(m, c, 3) != xs);
  }
}

TEST_CASE("sample moments converge to the closed forms") {
  const std::size_t n = 1000000;
  const MeasureSpec measures[] = {
      MeasureSpec::uniform01(), MeasureSpec::uniform_sym(),
      MeasureSpec::exponential(1.5), MeasureSpec::logistic(0.7),
      MeasureSpec::gaussian(1.0)};
  int stream = 0;
  for (const MeasureSpec& m : measures) {
    RngStream rng(777, static_cast<std::uint64_t>(stream++));
    double s1 = 0.0, s2 = 0.0, s1sq = 0.0, s2sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = std::abs(sample_one(m, rng));
      s1 += x;
      s1sq += x * x;
      const double x2 = x * x;
      s2 += x2;
      s2sq += x2 * x2;
    }
    const double m1_hat = s1 / n;
    const double m2_hat = s2 / n;
    const double se1 = std::sqrt((s1sq / n - m1_hat * m1_hat) / n);
    const double se2 = std::sqrt((s2sq / n - m2_hat * m2_hat) / n);
    CHECK(std::abs(m1_hat - moment_abs(m, 1)) <= 5.0 * se1);
    CHECK(std::abs(m2_hat - moment_abs(m, 2)) <= 5.0 * se2);
  }
}

TEST_CASE("empirical mean of symmetric uniform draws is near zero") {
  const std::size_t n = 1000000;
  RngStream rng(31415);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += sample_one(MeasureSpec::uniform_sym(), rng);
  }
  const double se = std::sqrt(1.0 / 12.0 / static_cast<double>(n));
  CHECK(std::abs(sum / static_cast<double>(n)) <= 5.0 * se);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(MeasureSpec::exponential(0.0), ArgumentError);
  CHECK_THROWS_AS(MeasureSpec::logistic(-1.0), ArgumentError);
  CHECK_THROWS_AS(MeasureSpec::gaussian(0.0), ArgumentError);
}
