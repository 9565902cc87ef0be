#pragma once

#include <functional>
#include <vector>

namespace dimtrunc {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // accumulated |Kronrod - Gauss| over accepted panels
  int panels = 0;
};

// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a,b].
// Bisects until the local error estimate meets the requested relative
// tolerance; throws NumericError (carrying the achieved tolerance) if the
// subdivision limit is reached first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol,
                                    int max_panels = 4096);

// Gauss-Legendre rule with n nodes on [-1,1]; integrates polynomials of
// degree <= 2n-1 exactly.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes by Newton iteration on the Legendre recurrence. Cached per n;
// thread-safe after first use.
const GaussLegendreRule& gauss_legendre_rule(int n);

}  // namespace dimtrunc
