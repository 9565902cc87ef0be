#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dimtrunc/rng.hpp"

namespace dimtrunc {

enum class Measure {
  Uniform01,    // uniform on [0,1]
  UniformSym,   // uniform on [-1/2,1/2]
  Exponential,  // density e^{-x/lambda}/lambda on [0,inf)
  Logistic,     // density e^{-x/lambda} / (lambda (1+e^{-x/lambda})^2) on R
  Gaussian,     // zero-mean normal with variance sigma2
};

struct MeasureSpec {
  Measure kind = Measure::Uniform01;
  double lambda = 1.0;  // Exponential, Logistic scale
  double sigma2 = 1.0;  // Gaussian variance

  static MeasureSpec uniform01();
  static MeasureSpec uniform_sym();
  static MeasureSpec exponential(double lambda);
  static MeasureSpec logistic(double lambda);
  static MeasureSpec gaussian(double sigma2);

  bool nonnegative_support() const {
    return kind == Measure::Uniform01 || kind == Measure::Exponential;
  }
  bool zero_mean() const {
    return kind == Measure::UniformSym || kind == Measure::Logistic ||
           kind == Measure::Gaussian;
  }
  std::string name() const;
};

// Value of a constant that may be known exactly, only as a two-sided
// bracket, or only from above.
enum class BoundKind { Exact, Interval, UpperBound };

struct BoundValue {
  BoundKind kind = BoundKind::Exact;
  double value = 0.0;  // Exact and UpperBound
  double lo = 0.0;     // Interval only
  double hi = 0.0;

  // The largest number certified to dominate the true value.
  double upper() const { return kind == BoundKind::Interval ? hi : value; }
};

// Absolute moment E|x|^r, r >= 1. Closed form for all measures except
// Logistic, which is integrated adaptively with a certified truncation
// remainder (relative target 1e-10).
double moment_abs(const MeasureSpec& measure, int r);

double mean(const MeasureSpec& measure);
double variance(const MeasureSpec& measure);

// k!! = k(k-2)(k-4)...; empty product (k=0) is 1. Computed in double:
// exact below 2^53, correctly rounded above.
double double_factorial(int k);

// Largest product of absolute moments m_{r_1}...m_{r_l} over all integer
// partitions r_1+...+r_l = M. Exhaustive over partitions; guarded to
// M <= 24 where the partition count stays small.
double c_constant_enum(const MeasureSpec& measure, int M);

// Closed-form value of the same constant, with the knowledge class the
// formula provides (Exact / Interval / UpperBound per measure).
BoundValue c_constant_closed(const MeasureSpec& measure, int M);

// Best certified upper bound usable in bound formulas for any M >= 1:
// the enumerated exact value inside the guard range, the closed form
// (or its certified upper edge) beyond it.
double c_constant_upper(const MeasureSpec& measure, int M);

// n i.i.d. draws via inverse-CDF transforms (rational-approximation
// normal quantile for Gaussian). Same stream state => same output.
std::vector<double> sample(const MeasureSpec& measure, RngStream& rng,
                           std::size_t n);

// Single draw, used by the hot sampling loops.
double sample_one(const MeasureSpec& measure, RngStream& rng);

}  // namespace dimtrunc
