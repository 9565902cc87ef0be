#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dimtrunc/errors.hpp"
#include "dimtrunc/kernels.hpp"
#include "dimtrunc/rng.hpp"
#include "oracles.hpp"

using namespace dimtrunc;

namespace {

std::vector<KernelSpec> all_kernels() {
  return {KernelSpec::fractional_wiener(0.3),
          KernelSpec::fractional_wiener(0.5),
          KernelSpec::r_folded(2),
          KernelSpec::r_folded(4),
          KernelSpec::two_sided(2),
          KernelSpec::korobov(WeightFunction::geometric(0.5), 1e-12),
          KernelSpec::korobov(WeightFunction::polynomial(2.0), 1e-10),
          KernelSpec::hermite(WeightFunction::geometric(0.5), 1e-10, 2.5)};
}

double random_point(const KernelSpec& k, RngStream& rng) {
  const double u = rng.next_unit();
  switch (k.kind) {
    case Kernel::RFoldedWiener: return 5.0 * u;
    case Kernel::Korobov: return u;
    case Kernel::Hermite: return 4.0 * (u - 0.5);
    default: return 6.0 * (u - 0.5);
  }
}

}  // namespace

TEST_CASE("pointwise kernel values") {
  CHECK(eval(KernelSpec::fractional_wiener(0.5), 1.0, 2.0) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eval(KernelSpec::r_folded(2), 1.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(eval(KernelSpec::two_sided(2), 1.0, -1.0) == 0.0);
  CHECK(eval(KernelSpec::two_sided(2), -1.0, -1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(eval(KernelSpec::r_folded(2), -1.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(KernelSpec::fractional_wiener(1.0), ArgumentError);
  CHECK_THROWS_AS(KernelSpec::r_folded(1), ArgumentError);
}

TEST_CASE("kernel symmetry") {
  RngStream rng(42);
  for (const KernelSpec& k : all_kernels()) {
    for (int i = 0; i < 200; ++i) {
      const double x = random_point(k, rng);
      const double y = random_point(k, rng);
      CHECK(eval(k, x, y) == eval(k, y, x));
    }
  }
}

TEST_CASE("squared distance properties") {
  RngStream rng(43);
  for (const KernelSpec& k : all_kernels()) {
    for (int i = 0; i < 100; ++i) {
      const double x = random_point(k, rng);
      const double y = random_point(k, rng);
      CHECK(sq_distance(k, x, y) >= 0.0);
      CHECK(sq_distance(k, x, x) == 0.0);
    }
  }
  // Fractional kernel: the squared distance is |x-y|^(2 beta) and vanishes
  // only at coincident points.
  const KernelSpec frac = KernelSpec::fractional_wiener(0.3);
  for (int i = 0; i < 200; ++i) {
    const double x = 6.0 * (rng.next_unit() - 0.5);
    const double y = 6.0 * (rng.next_unit() - 0.5);
    const double expected = std::pow(std::abs(x - y), 0.6);
    CHECK(sq_distance(frac, x, y) == doctest::Approx(expected).epsilon(1e-10));
    if (x != y) CHECK(sq_distance(frac, x, y) > 0.0);
  }
}

TEST_CASE("gram matrices are positive semidefinite") {
  RngStream rng(44);
  for (const KernelSpec& k : all_kernels()) {
    for (int set = 0; set < 50; ++set) {
      const std::size_t n = 6;
      std::vector<double> pts(n);
      for (double& p : pts) p = random_point(k, rng);
      std::vector<double> gram(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          gram[i * n + j] = eval(k, pts[i], pts[j]);
        }
      }
      const std::vector<double> eig = oracles::jacobi_eigenvalues(gram, n);
      double lo = eig[0], hi = eig[0];
      for (double e : eig) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
      }
      CHECK(lo >= -1e-8 * std::max(hi, 1e-30));
    }
  }
}

TEST_CASE("r-folded evaluation matches adaptive quadrature") {
  RngStream rng(45);
  for (int r = 2; r <= 6; ++r) {
    const KernelSpec k = KernelSpec::r_folded(r);
    double fac = 1.0;
    for (int v = 2; v <= r - 1; ++v) fac *= v;
    for (int i = 0; i < 100; ++i) {
      const double x = 5.0 * rng.next_unit();
      const double y = 5.0 * rng.next_unit();
      const double m = std::min(x, y);
      const double direct = eval(k, x, y);
      const double oracle =
          oracles::adaptive_simpson(
              [&](double t) {
                return std::pow(x - t, r - 1) * std::pow(y - t, r - 1);
              },
              0.0, m, 1e-16) /
          (fac * fac);
      CHECK(direct == doctest::Approx(oracle).epsilon(1e-12));
    }
  }
}

TEST_CASE("normalized hermite polynomials") {
  RngStream rng(46);
  for (int i = 0; i < 20; ++i) {
    const double x = 8.0 * (rng.next_unit() - 0.5);
    CHECK(hermite_poly(0, x) == 1.0);
    CHECK(hermite_poly(1, x) == doctest::Approx(x));
    CHECK(hermite_poly(2, x) ==
          doctest::Approx((x * x - 1.0) / std::sqrt(2.0)).epsilon(1e-13));
  }
  CHECK(hermite_poly(1, 2.0) == doctest::Approx(2.0));
  CHECK(hermite_poly(2, 1.0) == doctest::Approx(0.0));

  // Orthonormality under the standard normal weight, by quadrature.
  for (int i = 0; i <= 10; ++i) {
    for (int j = i; j <= 10; ++j) {
      const double integral = oracles::adaptive_simpson(
          [i, j](double x) {
            return hermite_poly(i, x) * hermite_poly(j, x) *
                   std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
          },
          -12.0, 12.0, 1e-12);
      const double expected = (i == j) ? 1.0 : 0.0;
      CHECK(std::abs(integral - expected) <= 1e-8);
    }
  }
}

TEST_CASE("korobov curvature constant") {
  CHECK(korobov_curvature(WeightFunction::geometric(0.5)) ==
        doctest::Approx(std::sqrt(6.0)).epsilon(1e-13));
  CHECK(korobov_curvature(WeightFunction::polynomial(2.0)) ==
        doctest::Approx(M_PI / std::sqrt(6.0)).epsilon(1e-13));
  CHECK_THROWS_AS(korobov_curvature(WeightFunction::polynomial(1.5)),
                  ArgumentError);
  // Direct-summation oracle at another q.
  double direct = 0.0;
  for (int h = 200; h >= 1; --h) direct += h * h * std::pow(0.3, h);
  CHECK(korobov_curvature(WeightFunction::geometric(0.3)) ==
        doctest::Approx(std::sqrt(direct)).epsilon(1e-13));
  // Monotone in q, and ~ sqrt(q) for tiny q.
  CHECK(korobov_curvature(WeightFunction::geometric(0.2)) <
        korobov_curvature(WeightFunction::geometric(0.5)));
  CHECK(korobov_curvature(WeightFunction::geometric(1e-6)) ==
        doctest::Approx(std::sqrt(1e-6)).epsilon(1e-5));
}

TEST_CASE("hermite weight sum") {
  double direct = 0.0;
  for (int l = 400; l >= 1; --l) {
    direct += std::pow(0.5, l) * std::pow(static_cast<double>(l), 11.0 / 6.0);
  }
  CHECK(hermite_weight_sum(WeightFunction::geometric(0.5)) ==
        doctest::Approx(direct).epsilon(1e-12));
  // 2 alpha = 4: sum l^(11/6 - 4) = zeta(13/6).
  double zeta_direct = 0.0;
  for (int l = 1; l <= 2000000; ++l) {
    zeta_direct += std::pow(static_cast<double>(l), 11.0 / 6.0 - 4.0);
  }
  CHECK(hermite_weight_sum(WeightFunction::polynomial(2.0)) ==
        doctest::Approx(zeta_direct).epsilon(1e-6));
  CHECK(hermite_weight_sum(WeightFunction::geometric(1e-8)) ==
        doctest::Approx(1e-8).epsilon(1e-6));
  CHECK_THROWS_AS(hermite_weight_sum(WeightFunction::polynomial(1.4)),
                  ArgumentError);
}

TEST_CASE("series caps meet their truncation budget") {
  const WeightFunction w = WeightFunction::geometric(0.5);
  const KernelSpec base = KernelSpec::korobov(w, 1e-10);
  KernelSpec wide = base;
  wide.series_cap = 4 * base.series_cap;
  RngStream rng(47);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.next_unit();
    const double y = rng.next_unit();
    CHECK(std::abs(eval(base, x, y) - eval(wide, x, y)) <= 2.0 * base.tail_tol);
  }
  // Hermite cap certified within its envelope.
  const KernelSpec hbase = KernelSpec::hermite(w, 1e-8, 2.0);
  KernelSpec hwide = hbase;
  hwide.series_cap = 4 * hbase.series_cap;
  for (int i = 0; i < 100; ++i) {
    const double x = 4.0 * (rng.next_unit() - 0.5);
    const double y = 4.0 * (rng.next_unit() - 0.5);
    CHECK(std::abs(eval(hbase, x, y) - eval(hwide, x, y)) <=
          2.0 * hbase.tail_tol);
  }
}
