#include "dimtrunc/bounds.hpp"

#include <cmath>
#include <limits>

#include "dimtrunc/errors.hpp"

namespace dimtrunc {

HolderClass HolderClass::make(double C, double beta) {
  if (!(C > 0.0)) throw ArgumentError("holder class: C must be > 0");
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw ArgumentError("holder class: beta must be in (0,1]");
  }
  return {C, beta};
}

std::string HolderClass::name() const {
  return "holder(C=" + std::to_string(C) + ",beta=" + std::to_string(beta) + ")";
}

std::string to_string(FormulaId id) {
  switch (id) {
    case FormulaId::FR1: return "FR1";
    case FormulaId::GEN_BETA: return "GEN_BETA";
    case FormulaId::ZERO_MEAN: return "ZERO_MEAN";
    case FormulaId::POWER_M: return "POWER_M";
    case FormulaId::RFOLD_B: return "RFOLD_B";
    case FormulaId::RFOLD_U: return "RFOLD_U";
    case FormulaId::TWOSIDED_B: return "TWOSIDED_B";
    case FormulaId::TWOSIDED_U: return "TWOSIDED_U";
    case FormulaId::KOROBOV: return "KOROBOV";
    case FormulaId::HERMITE_B: return "HERMITE_B";
    case FormulaId::HERMITE_S: return "HERMITE_S";
  }
  return "?";
}

std::string to_string(FoldMode mode) {
  return mode == FoldMode::Bounded ? "bounded" : "unbounded";
}

std::string to_string(HermiteMode mode) {
  return mode == HermiteMode::BoundedExp ? "bounded_exp" : "split_exp";
}

MomentBound holder_moment_bound(const MeasureSpec& measure,
                                const CoefficientSequence& seq, long long k,
                                double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw ArgumentError("holder_moment_bound: beta must be in (0,1]");
  }
  const double mean_x = mean(measure);
  const double signed_tail = tail_signed_sum(seq, k);
  const double sq_tail = tail_sq_sum(seq, k);
  const double second = mean_x * signed_tail * mean_x * signed_tail +
                        variance(measure) * sq_tail;
  MomentBound best{std::pow(second, beta),
                   mean_x == 0.0 ? FormulaId::ZERO_MEAN : FormulaId::GEN_BETA};
  if (beta <= 0.5) {
    const double first =
        std::pow(moment_abs(measure, 1) * tail_abs_sum(seq, k), 2.0 * beta);
    if (first < best.value) best = {first, FormulaId::FR1};
  }
  return best;
}

namespace {

std::vector<std::pair<std::string, std::string>> echo_inputs(
    const MeasureSpec& measure, const CoefficientSequence& seq, long long k) {
  return {{"measure", measure.name()},
          {"sequence", seq.name()},
          {"k", std::to_string(k)}};
}

}  // namespace

BoundReport holder_error_bound(const HolderClass& holder,
                               const MeasureSpec& measure,
                               const CoefficientSequence& seq, long long k) {
  const MomentBound mb = holder_moment_bound(measure, seq, k, holder.beta);
  BoundReport report;
  report.k = k;
  report.value = holder.C * std::sqrt(mb.value);
  report.formula = mb.formula;
  report.assumptions = {"holder C=" + std::to_string(holder.C),
                        "holder beta=" + std::to_string(holder.beta)};
  report.inputs = echo_inputs(measure, seq, k);
  return report;
}

HolderClass gp_space_params(double p) {
  if (std::isinf(p)) return {1.0, 1.0};
  if (!(p > 1.0)) throw ArgumentError("gp_space_params: p must be > 1");
  return {1.0, 1.0 - 1.0 / p};  // 1/p* with 1/p + 1/p* = 1
}

double power_moment_bound(const MeasureSpec& measure,
                          const CoefficientSequence& seq, long long k, int M) {
  if (M < 1) throw ArgumentError("power_moment_bound: M must be >= 1");
  const double tail = tail_abs_sum(seq, k);
  if (tail == 0.0) return 0.0;
  return c_constant_upper(measure, M) * std::pow(tail, M);
}

double fold_constant(int r) {
  if (r < 2) throw ArgumentError("fold_constant: r must be >= 2");
  double fac = 1.0;
  for (int v = 2; v <= r - 1; ++v) fac *= v;
  const double c =
      std::sqrt(1.0 / (2.0 * r - 1.0) +
                (r - 1.0) * (r - 1.0) / (2.0 * r - 3.0)) / fac;
  if (c > fold_constant_upper(r)) {
    throw NumericError("fold_constant exceeded its envelope");
  }
  return c;
}

double fold_constant_upper(int r) {
  if (r < 2) throw ArgumentError("fold_constant_upper: r must be >= 2");
  double fac = 1.0;
  for (int v = 2; v <= r - 1; ++v) fac *= v;
  return std::sqrt(2.0 * r / 3.0) / fac;
}

namespace {

// Moment-form factor (C(4) C(4r-6))^{1/4} shared by the unbounded modes.
double unbounded_moment_factor(const MeasureSpec& measure, int r) {
  return std::pow(
      c_constant_upper(measure, 4) * c_constant_upper(measure, 4 * r - 6),
      0.25);
}

}  // namespace

BoundReport rfolded_bound(const MeasureSpec& measure,
                          const CoefficientSequence& seq, long long k, int r,
                          FoldMode mode) {
  if (k < 0) throw ArgumentError("rfolded_bound: k must be >= 0");
  if (!measure.nonnegative_support()) {
    throw ArgumentError(
        "rfolded_bound: coordinate measure must have nonnegative support");
  }
  if (!seq.all_nonnegative()) {
    throw ArgumentError("rfolded_bound: coefficients must be >= 0");
  }
  const double c = fold_constant(r);
  const double signed_tail = tail_signed_sum(seq, k);
  const double sq_tail = tail_sq_sum(seq, k);
  const double total = tail_abs_sum(seq, 0);

  BoundReport report;
  report.k = k;
  report.inputs = echo_inputs(measure, seq, k);
  report.inputs.emplace_back("r", std::to_string(r));

  if (mode == FoldMode::Bounded) {
    if (measure.kind != Measure::Uniform01) {
      throw PreconditionRefused(
          "rfolded_bound bounded mode: sup of Y is certified only for "
          "uniform01 coordinates; got " + measure.name());
    }
    const double sup = total;  // coordinates <= 1, coefficients >= 0
    const double m = mean(measure) * signed_tail;
    report.value = c * std::pow(sup, r - 1.5) *
                   std::sqrt(m * m + variance(measure) * sq_tail);
    report.formula = FormulaId::RFOLD_B;
    report.assumptions = {"sup Y = sum of coefficients (coordinates in [0,1])"};
    return report;
  }

  report.value = c * unbounded_moment_factor(measure, r) * signed_tail *
                 std::pow(total, r - 1.5);
  report.formula = FormulaId::RFOLD_U;
  report.assumptions = {"finite moments of order 4 and " + std::to_string(4 * r - 6)};
  return report;
}

BoundReport twosided_bound(const MeasureSpec& measure,
                           const CoefficientSequence& seq, long long k, int r,
                           FoldMode mode) {
  if (k < 0) throw ArgumentError("twosided_bound: k must be >= 0");
  const double c = fold_constant(r);
  const double abs_tail = tail_abs_sum(seq, k);
  const double sq_tail = tail_sq_sum(seq, k);
  const double total = tail_abs_sum(seq, 0);

  BoundReport report;
  report.k = k;
  report.inputs = echo_inputs(measure, seq, k);
  report.inputs.emplace_back("r", std::to_string(r));
  // Coefficient tails enter in absolute value; for sign-free sequences this
  // coincides with the signed sums.
  report.assumptions = {"coefficient tails taken in absolute value"};

  if (mode == FoldMode::Bounded) {
    double sup_abs;
    if (measure.kind == Measure::UniformSym) {
      sup_abs = 0.5 * total;
    } else if (measure.kind == Measure::Uniform01) {
      sup_abs = total;
    } else {
      throw PreconditionRefused(
          "twosided_bound bounded mode: sup of Y_abs is certified only for "
          "uniform coordinates; got " + measure.name());
    }
    const double m = mean(measure) * abs_tail;
    report.value = c * std::pow(sup_abs, r - 1.5) *
                   std::sqrt(m * m + variance(measure) * sq_tail);
    report.formula = FormulaId::TWOSIDED_B;
    report.assumptions.push_back("sup Y_abs = " + std::to_string(sup_abs));
    return report;
  }

  report.value = c * unbounded_moment_factor(measure, r) * abs_tail *
                 std::pow(total, r - 1.5);
  report.formula = FormulaId::TWOSIDED_U;
  report.assumptions.push_back("finite moments of order 4 and " +
                               std::to_string(4 * r - 6));
  return report;
}

BoundReport korobov_bound(const MeasureSpec& measure,
                          const CoefficientSequence& seq, long long k,
                          const WeightFunction& weight) {
  if (k < 0) throw ArgumentError("korobov_bound: k must be >= 0");
  const double curvature = korobov_curvature(weight);
  const MomentBound m2 = holder_moment_bound(measure, seq, k, 1.0);
  BoundReport report;
  report.k = k;
  report.value =
      2.0 * std::sqrt(2.0) * M_PI * curvature * std::sqrt(m2.value);
  report.formula = FormulaId::KOROBOV;
  report.assumptions = {"series curvature C_r=" + std::to_string(curvature),
                        "second moment via " + to_string(m2.formula)};
  report.inputs = echo_inputs(measure, seq, k);
  report.inputs.emplace_back("weight", weight.name());
  return report;
}

BoundReport hermite_bound(const MeasureSpec& measure,
                          const CoefficientSequence& seq, long long k,
                          const WeightFunction& weight, HermiteMode mode,
                          const std::optional<ExpMomentEstimate>& exp_moment) {
  if (k < 0) throw ArgumentError("hermite_bound: k must be >= 0");
  const double V = hermite_weight_sum(weight);
  // Envelope constant absorbing the Hermite sup bound: 2^{1/12} sqrt(pi).
  const double c = std::pow(2.0, 1.0 / 12.0) * std::sqrt(M_PI);
  const double total = tail_abs_sum(seq, 0);

  BoundReport report;
  report.k = k;
  report.inputs = echo_inputs(measure, seq, k);
  report.inputs.emplace_back("weight", weight.name());
  report.assumptions = {"envelope constant c = 2^(1/12) sqrt(pi)"};

  if (mode == HermiteMode::BoundedExp) {
    double sup_exp;
    if (measure.kind == Measure::UniformSym) {
      sup_exp = std::exp(total * total / 8.0);
    } else if (measure.kind == Measure::Uniform01) {
      sup_exp = std::exp(total * total / 2.0);
    } else {
      throw PreconditionRefused(
          "hermite_bound bounded mode: sup of exp(Y_abs^2/2) is certified "
          "only for uniform coordinates; got " + measure.name());
    }
    const MomentBound m2 = holder_moment_bound(measure, seq, k, 1.0);
    report.value =
        c * std::sqrt(std::sqrt(2.0 * M_PI) * V * sup_exp * m2.value);
    report.formula = FormulaId::HERMITE_B;
    report.assumptions.push_back("sup exp(Y_abs^2/2) = " + std::to_string(sup_exp));
    report.assumptions.push_back("second moment via " + to_string(m2.formula));
    return report;
  }

  if (!exp_moment.has_value()) {
    throw ArgumentError(
        "hermite_bound split mode: requires an estimate of E exp(Y_abs^2)");
  }
  const double m4 = power_moment_bound(measure, seq, k, 4);
  report.value = c * std::sqrt(std::sqrt(2.0 * M_PI) * V *
                               std::sqrt(exp_moment->value) * std::sqrt(m4));
  report.formula = FormulaId::HERMITE_S;
  report.assumptions.push_back(
      "E exp(Y_abs^2) from Monte Carlo (lower-biased), value=" +
      std::to_string(exp_moment->value));
  return report;
}

}  // namespace dimtrunc
