#include "dimtrunc/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <mutex>

#include "dimtrunc/errors.hpp"

namespace dimtrunc {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK tables).
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
  double kronrod;
  double error;
};

PanelEstimate gauss_kronrod_panel(const std::function<double(double)>& f,
                                  double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < 7; ++i) {
    const double offset = half * kKronrodNodes[i];
    const double fsum = f(center - offset) + f(center + offset);
    kronrod += kKronrodWeights[i] * fsum;
    // Odd-index Kronrod nodes are the embedded 7-point Gauss nodes.
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
  }
  const double fc = f(center);
  kronrod += kKronrodWeights[7] * fc;
  gauss += kGaussWeights[3] * fc;
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol,
                                    int max_panels) {
  struct Segment {
    double a, b, value, error;
  };

  PanelEstimate whole = gauss_kronrod_panel(f, a, b);
  std::vector<Segment> segments = {{a, b, whole.kronrod, whole.error}};
  int panels = 1;

  auto total = [&segments] {
    double v = 0.0, e = 0.0;
    for (const Segment& s : segments) {
      v += s.value;
      e += s.error;
    }
    return std::pair<double, double>(v, e);
  };

  while (panels < max_panels) {
    auto [value, error] = total();
    const double target = rel_tol * std::max(std::abs(value),
                                             std::numeric_limits<double>::min());
    if (error <= target) {
      return {value, error, panels};
    }
    // Split the segment with the largest error estimate.
    std::size_t worst = 0;
    for (std::size_t i = 1; i < segments.size(); ++i) {
      if (segments[i].error > segments[worst].error) worst = i;
    }
    Segment seg = segments[worst];
    const double mid = 0.5 * (seg.a + seg.b);
    PanelEstimate left = gauss_kronrod_panel(f, seg.a, mid);
    PanelEstimate right = gauss_kronrod_panel(f, mid, seg.b);
    segments[worst] = {seg.a, mid, left.kronrod, left.error};
    segments.push_back({mid, seg.b, right.kronrod, right.error});
    ++panels;
  }

  auto [value, error] = total();
  const double achieved =
      std::abs(value) > 0 ? error / std::abs(value)
                          : std::numeric_limits<double>::infinity();
  throw NumericError("adaptive quadrature did not reach rel_tol=" +
                     std::to_string(rel_tol) +
                     "; achieved=" + std::to_string(achieved));
}

namespace {

GaussLegendreRule make_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-based initial guess, then Newton on the recurrence.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = -p1 / pp;
      z += dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule(int n) {
  constexpr int kMaxCached = 32;
  if (n < 1 || n > kMaxCached) {
    throw ArgumentError("gauss_legendre_rule: n must be in [1, 32]");
  }
  static std::array<GaussLegendreRule, kMaxCached + 1> cache;
  static std::array<std::once_flag, kMaxCached + 1> flags;
  std::call_once(flags[n], [n] { cache[n] = make_rule(n); });
  return cache[n];
}

}  // namespace dimtrunc
