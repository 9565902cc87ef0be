#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dimtrunc {

// Coefficient sequence xi_j, j >= 1. Either the power-law family
// xi_j = j^-a with a > 1 (absolutely summable by construction), or an
// explicit finite list that is zero beyond its length.
struct CoefficientSequence {
  bool power_law = true;
  double decay = 2.0;          // a, power-law only
  std::vector<double> values;  // finite-list only

  static CoefficientSequence power(double a);
  static CoefficientSequence finite(std::vector<double> values);

  bool all_nonnegative() const;
  std::string name() const;
};

double xi(const CoefficientSequence& seq, long long j);

// Tail sums over j > k. Power-law tails use direct summation plus an
// Euler-Maclaurin closed tail whose first omitted term certifies the
// remainder; relative accuracy is far below 1e-12. Finite lists are exact.
double tail_abs_sum(const CoefficientSequence& seq, long long k);
double tail_signed_sum(const CoefficientSequence& seq, long long k);
double tail_sq_sum(const CoefficientSequence& seq, long long k);

// Closed two-sided bracket for sum_{j>k} j^-a, a > 1:
// 1/((a-1)(k+1)^{a-1}) <= tail <= 1/((a-1)(k+1/2)^{a-1}).
std::pair<double, double> tail_bracket(double a, long long k);

// sum_{j>k} j^-a for a > 1; zeta(a) is the k = 0 case.
double power_tail_sum(double a, long long k);
double zeta(double a);

}  // namespace dimtrunc
