#include "dimtrunc/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>

#include "dimtrunc/bounds.hpp"
#include "dimtrunc/coefficients.hpp"
#include "dimtrunc/estimators.hpp"
#include "dimtrunc/experiment.hpp"
#include "dimtrunc/kernels.hpp"
#include "dimtrunc/measures.hpp"
#include "dimtrunc/quadrature.hpp"
#include "dimtrunc/rng.hpp"
#include "dimtrunc/tables.hpp"

namespace dimtrunc {

namespace {

struct CheckOutcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(double v) { return format_double(v); }

// ---- 1: enumerated moment-product constants against the closed forms ----
CheckOutcome check_constants(bool tamper, unsigned) {
  const double enum_scale = tamper ? 0.2 : 1.0;
  double worst = 0.0;
  for (const MeasureSpec& m :
       {MeasureSpec::uniform01(), MeasureSpec::uniform_sym(),
        MeasureSpec::exponential(1.3)}) {
    for (int M = 1; M <= 8; ++M) {
      const double e = enum_scale * c_constant_enum(m, M);
      const double c = c_constant_closed(m, M).value;
      worst = std::max(worst, std::abs(e - c) / c);
    }
  }
  if (worst > 1e-12) {
    return {false, "exact-form mismatch, rel err " + fmt(worst)};
  }
  const MeasureSpec logistic = MeasureSpec::logistic(1.0);
  for (int M = 1; M <= 8; ++M) {
    const double e = enum_scale * c_constant_enum(logistic, M);
    const BoundValue b = c_constant_closed(logistic, M);
    if (!(e > b.lo && e < b.hi)) {
      return {false, "logistic M=" + std::to_string(M) + " outside (" +
                         fmt(b.lo) + "," + fmt(b.hi) + "): " + fmt(e)};
    }
  }
  const MeasureSpec gauss = MeasureSpec::gaussian(1.0);
  for (int M = 1; M <= 8; ++M) {
    const double e = enum_scale * c_constant_enum(gauss, M);
    const double u = c_constant_closed(gauss, M).value;
    if (e > u * (1.0 + 1e-12)) {
      return {false, "gaussian M=" + std::to_string(M) + " above bound"};
    }
    if (M % 2 == 0 && std::abs(e - u) > 1e-12 * u) {
      return {false, "gaussian even M=" + std::to_string(M) +
                         " not attained: " + fmt(e) + " vs " + fmt(u)};
    }
  }
  return {true, "enum==closed to 1e-12; logistic inside bracket; gaussian "
                "dominated (equality at even M); worst rel err " + fmt(worst)};
}

// ---- 2: logistic absolute moments inside their factorial bracket ----
CheckOutcome check_logistic_bracket(bool tamper, unsigned) {
  const double scale = tamper ? 3.0 : 1.0;
  double min_margin = 1.0;
  for (double lambda : {1.0, 2.0}) {
    const MeasureSpec m = MeasureSpec::logistic(lambda);
    double fac = 1.0;
    for (int r = 1; r <= 8; ++r) {
      fac *= r;
      const double base = std::pow(lambda, r) * fac;
      const double value = scale * moment_abs(m, r);
      if (!(value > 0.5 * base && value < 2.0 * base)) {
        return {false, "lambda=" + fmt(lambda) + " r=" + std::to_string(r) +
                           ": " + fmt(value) + " outside (" + fmt(0.5 * base) +
                           "," + fmt(2.0 * base) + ")"};
      }
      min_margin = std::min(min_margin, (value - 0.5 * base) / base);
      min_margin = std::min(min_margin, (2.0 * base - value) / base);
    }
  }
  return {true, "m_r strictly inside (r! l^r/2, 2 r! l^r); min margin " +
                    fmt(min_margin)};
}

// ---- 3: power-law tails inside the closed bracket ----
CheckOutcome check_tail_bracket(bool tamper, unsigned) {
  const double scale = tamper ? 1.05 : 1.0;
  for (double a : {1.5, 2.0, 3.0}) {
    for (long long k = 0; k <= 64; ++k) {
      const double tail = scale * power_tail_sum(a, k);
      const auto [lo, hi] = tail_bracket(a, k);
      if (!(tail >= lo && tail <= hi)) {
        return {false, "a=" + fmt(a) + " k=" + std::to_string(k) + ": " +
                           fmt(tail) + " outside [" + fmt(lo) + "," + fmt(hi) +
                           "]"};
      }
    }
  }
  return {true, "tail sums inside their brackets for a in {1.5,2,3}, k<=64"};
}

// ---- 4: fractional kernel squared distance == |x-y|^(2 beta) ----
CheckOutcome check_fractional_identity(bool tamper, unsigned workers) {
  const double wobble = tamper ? 1.0 + 1e-9 : 1.0;
  RngStream rng(20260801);
  double worst = 0.0;
  for (double beta : {0.25, 0.5, 0.75}) {
    const KernelSpec kernel = KernelSpec::fractional_wiener(beta);
    for (int i = 0; i < 10000; ++i) {
      const double x = 6.0 * (rng.next_unit() - 0.5);
      const double y = 6.0 * (rng.next_unit() - 0.5);
      const double d = wobble * sq_distance(kernel, x, y);
      const double direct = std::pow(std::abs(x - y), 2.0 * beta);
      worst = std::max(worst, std::abs(d - direct));
    }
  }
  if (worst > 1e-12) {
    return {false, "pointwise identity broke: abs err " + fmt(worst)};
  }
  // Per-seed consequence: the kernel-error estimate squared equals the
  // moment estimate on the same paths.
  McConfig config;
  config.samples = 2000;
  config.ref_level = 4000;
  config.seed = 20260804;
  config.k_grid = {4, 16};
  const MeasureSpec measure = MeasureSpec::uniform_sym();
  const CoefficientSequence seq = CoefficientSequence::power(2.0);
  const PathEnsemble paths = sample_paths(measure, seq, config, workers);
  double worst_rel = 0.0;
  for (double beta : {0.25, 0.5, 0.75}) {
    const KernelSpec kernel = KernelSpec::fractional_wiener(beta);
    for (long long k : config.k_grid) {
      const McEstimate err = err_kernel_from_paths(paths, kernel, measure, seq, k);
      const McEstimate mom = moment_from_paths(paths, measure, seq, k, 2.0 * beta);
      const double rel =
          std::abs(wobble * err.value * err.value - mom.value) / mom.value;
      worst_rel = std::max(worst_rel, rel);
    }
  }
  if (worst_rel > 1e-12) {
    return {false, "estimator identity broke: rel err " + fmt(worst_rel)};
  }
  return {true, "pointwise abs err " + fmt(worst) + "; estimator rel err " +
                    fmt(worst_rel)};
}

// ---- 5: r-folded evaluation against adaptive quadrature ----
CheckOutcome check_rfolded_quadrature(bool tamper, unsigned) {
  const double wobble = tamper ? 1.0 + 1e-9 : 1.0;
  RngStream rng(20260805);
  double worst = 0.0;
  for (int r = 2; r <= 6; ++r) {
    const KernelSpec kernel = KernelSpec::r_folded(r);
    double fac = 1.0;
    for (int v = 2; v <= r - 1; ++v) fac *= v;
    for (int i = 0; i < 1000; ++i) {
      const double x = 5.0 * rng.next_unit();
      const double y = 5.0 * rng.next_unit();
      const double direct = wobble * eval(kernel, x, y);
      const double m = std::min(x, y);
      const QuadratureResult q = integrate_adaptive(
          [&](double t) {
            return std::pow(x - t, r - 1) * std::pow(y - t, r - 1);
          },
          0.0, m, 1e-14);
      const double oracle = q.value / (fac * fac);
      worst = std::max(worst, std::abs(direct - oracle) /
                                  std::max(std::abs(oracle), 1e-300));
    }
  }
  if (worst > 1e-12) return {false, "rel err " + fmt(worst) + " > 1e-12"};
  return {true, "Gauss-Legendre vs adaptive quadrature rel err " + fmt(worst)};
}

struct DominationResult {
  bool passed = true;
  double min_slack_se = 1e300;  // (bound + 3 se - estimate)/se, minimum
  long long worst_k = 0;
};

DominationResult check_domination(const std::vector<SweepRow>& rows,
                                  const std::function<double(long long)>& bound_fn,
                                  double bound_scale) {
  DominationResult result;
  for (const SweepRow& row : rows) {
    const double bound = bound_scale * bound_fn(row.k);
    const double se = std::max(row.estimate.std_error, 1e-300);
    const double slack = (bound + 3.0 * se - row.estimate.value) / se;
    if (slack < result.min_slack_se) {
      result.min_slack_se = slack;
      result.worst_k = row.k;
    }
    if (row.estimate.value > bound + 3.0 * se) result.passed = false;
  }
  return result;
}

std::string domination_detail(const DominationResult& r) {
  return std::string(r.passed ? "estimate <= bound + 3se at every k"
                              : "domination violated") +
         "; tightest k=" + std::to_string(r.worst_k) + " with slack " +
         fmt(r.min_slack_se) + " se";
}

// ---- 6: Monte Carlo against the Holder moment bound, fractional kernel ----
CheckOutcome check_dominate_fractional(bool tamper, unsigned workers) {
  const double scale = tamper ? 0.5 : 1.0;
  McConfig config;
  config.samples = 100000;
  config.ref_level = 100000;
  config.seed = 20260806;
  config.k_grid = {1, 2, 4, 8, 16, 32};
  const MeasureSpec measure = MeasureSpec::uniform_sym();
  const CoefficientSequence seq = CoefficientSequence::power(2.0);
  const SweepTarget target =
      SweepTarget::for_kernel(KernelSpec::fractional_wiener(0.5));
  const std::vector<SweepRow> rows = sweep(target, measure, seq, config, workers);
  const DominationResult r = check_domination(
      rows,
      [&](long long k) {
        return target_bound(target, measure, seq, k).value;
      },
      scale);
  return {r.passed, domination_detail(r)};
}

// ---- 7: r-folded kernel against its closed power-law envelope ----
CheckOutcome check_dominate_rfolded(bool tamper, unsigned workers) {
  const double scale = tamper ? 0.5 : 1.0;
  const int r = 2;
  const double a = 2.0;
  McConfig config;
  config.samples = 100000;
  config.ref_level = 100000;
  config.seed = 20260807;
  config.k_grid = {1, 2, 4, 8, 16, 32};
  const MeasureSpec measure = MeasureSpec::uniform01();
  const CoefficientSequence seq = CoefficientSequence::power(a);
  const SweepTarget target = SweepTarget::for_kernel(KernelSpec::r_folded(r));
  const std::vector<SweepRow> rows = sweep(target, measure, seq, config, workers);
  // Closed envelope c_{r,a} (k+1/2)^{-(a-1)} for uniform01 coordinates.
  double fac = 1.0;
  for (int v = 2; v <= r - 1; ++v) fac *= v;
  const double c_ra = std::sqrt(r / 6.0) * std::pow(zeta(a), r - 1.5) / fac *
                      std::sqrt(1.0 / ((a - 1.0) * (a - 1.0)) +
                                2.0 / (9.0 * (2.0 * a - 1.0)));
  const DominationResult res = check_domination(
      rows,
      [&](long long k) { return c_ra * std::pow(k + 0.5, -(a - 1.0)); },
      scale);
  return {res.passed, domination_detail(res) + "; c_ra=" + fmt(c_ra)};
}

// ---- 8: Korobov kernel against its zero-mean closed bound ----
CheckOutcome check_dominate_korobov(bool tamper, unsigned workers) {
  const double scale = tamper ? 0.5 : 1.0;
  McConfig config;
  config.samples = 100000;
  config.ref_level = 100000;
  config.seed = 20260808;
  config.k_grid = {1, 2, 4, 8, 16, 32};
  const MeasureSpec measure = MeasureSpec::uniform_sym();
  const CoefficientSequence seq = CoefficientSequence::power(2.0);
  const WeightFunction weight = WeightFunction::geometric(0.5);
  const SweepTarget target =
      SweepTarget::for_kernel(KernelSpec::korobov(weight, 1e-12));
  const std::vector<SweepRow> rows = sweep(target, measure, seq, config, workers);
  const double curvature = korobov_curvature(weight);
  const DominationResult res = check_domination(
      rows,
      [&](long long k) {
        return std::sqrt(2.0 / 3.0) * M_PI * curvature *
               std::sqrt(tail_sq_sum(seq, k));
      },
      scale);
  return {res.passed,
          domination_detail(res) + "; C_r=" + fmt(curvature) +
              " cap=" + std::to_string(target.kernel.series_cap)};
}

// ---- 9: Hermite kernel against the bounded-exponential closed bound ----
CheckOutcome check_dominate_hermite(bool tamper, unsigned workers) {
  const double scale = tamper ? 0.5 : 1.0;
  const double a = 2.0;
  McConfig config;
  config.samples = 100000;
  config.ref_level = 100000;
  config.seed = 20260809;
  config.k_grid = {1, 2, 4, 8, 16, 32};
  const MeasureSpec measure = MeasureSpec::uniform_sym();
  const CoefficientSequence seq = CoefficientSequence::power(a);
  const WeightFunction weight = WeightFunction::geometric(0.5);
  // |Y| <= zeta(2)/2 < 1, so an envelope radius of 1 certifies the cap.
  const KernelSpec kernel = KernelSpec::hermite(weight, 1e-10, 1.0);
  if (kernel.series_cap > 64) {
    return {false, "series cap " + std::to_string(kernel.series_cap) + " > 64"};
  }
  const SweepTarget target = SweepTarget::for_kernel(kernel);
  const std::vector<SweepRow> rows = sweep(target, measure, seq, config, workers);
  const double c = std::pow(2.0, 1.0 / 12.0) * std::sqrt(M_PI);
  const double V = hermite_weight_sum(weight);
  const double c_tilde = c * std::sqrt(std::sqrt(2.0 * M_PI) * V / 12.0);
  const double z = zeta(a);
  const DominationResult res = check_domination(
      rows,
      [&](long long k) {
        return c_tilde * std::exp(z * z / 16.0) /
               (std::sqrt(2.0 * a - 1.0) * std::pow(k + 0.5, a - 0.5));
      },
      scale);
  return {res.passed,
          domination_detail(res) + "; cap=" + std::to_string(kernel.series_cap)};
}

// ---- 10: mean-difference error below the expected-square error ----
CheckOutcome check_e1_le_e2(bool tamper, unsigned workers) {
  const double scale = tamper ? 0.5 : 1.0;
  McConfig config;
  config.samples = 20000;
  config.ref_level = 20000;
  config.seed = 20260810;
  config.k_grid = {4};
  const MeasureSpec measure = MeasureSpec::uniform_sym();
  const CoefficientSequence seq = CoefficientSequence::power(2.0);
  const std::vector<KernelSpec> kernels = {
      KernelSpec::fractional_wiener(0.4),
      KernelSpec::korobov(WeightFunction::geometric(0.5), 1e-12),
      KernelSpec::two_sided(2),
  };
  std::string detail;
  for (const KernelSpec& kernel : kernels) {
    const PathEnsemble x_paths = sample_paths(measure, seq, config, workers, 0);
    const PathEnsemble z_paths = sample_paths(measure, seq, config, workers, 1);
    const McEstimate e2 = err_kernel_from_paths(x_paths, kernel, measure, seq, 4);
    const McEstimate e1 = e1_from_paths(x_paths, z_paths, kernel, 4);
    const double tol = 3.0 * std::sqrt(e1.std_error * e1.std_error +
                                       e2.std_error * e2.std_error);
    if (!detail.empty()) detail += "; ";
    detail += kernel.name() + ": e1=" + fmt(e1.value) + " e2=" + fmt(e2.value);
    if (e1.value > scale * e2.value + tol) {
      return {false, detail + " (violates e1 <= e2 + 3se)"};
    }
  }
  return {true, detail};
}

// ---- 11: log-log decay rate of the fractional error ----
CheckOutcome check_decay_rate(bool tamper, unsigned workers) {
  McConfig config;
  config.samples = 100000;
  config.ref_level = 100000;
  config.seed = 20260811;
  config.k_grid = {2, 4, 8, 16, 32, 64};
  const MeasureSpec measure = MeasureSpec::uniform_sym();
  const CoefficientSequence seq = CoefficientSequence::power(2.0);
  const SweepTarget target =
      SweepTarget::for_kernel(KernelSpec::fractional_wiener(0.5));
  const std::vector<SweepRow> rows = sweep(target, measure, seq, config, workers);
  const DecayFit fit = fit_decay_rate(rows);
  const double expected = tamper ? -2.0 : -0.75;
  const bool ok = std::abs(fit.slope - expected) <= 0.25;
  return {ok, "fitted slope " + fmt(fit.slope) + " vs expected " +
                  fmt(expected) + " +- 0.25; residual " + fmt(fit.residual)};
}

// ---- 12: byte-identical sweep output across worker counts ----
CheckOutcome check_reproducibility(bool tamper, unsigned) {
  ExperimentSpec spec;
  spec.measure = MeasureSpec::uniform_sym();
  spec.sequence = CoefficientSequence::power(2.0);
  spec.target = SweepTarget::for_kernel(KernelSpec::fractional_wiener(0.5));
  spec.mc.samples = 2000;
  spec.mc.ref_level = 4000;
  spec.mc.seed = 99;
  spec.mc.k_grid = {1, 2, 4};

  const std::vector<SweepRow> rows1 =
      sweep(spec.target, spec.measure, spec.sequence, spec.mc, 1);
  ExperimentSpec spec8 = spec;
  if (tamper) spec8.mc.seed += 1;
  const std::vector<SweepRow> rows8 =
      sweep(spec8.target, spec8.measure, spec8.sequence, spec8.mc, 8);

  std::optional<DecayFit> fit1, fit8;
  try {
    fit1 = fit_decay_rate(rows1);
    fit8 = fit_decay_rate(rows8);
  } catch (const std::exception&) {
  }
  const std::string csv1 = sweep_table_csv(spec, rows1, fit1);
  const std::string csv8 = sweep_table_csv(spec, rows8, fit8);
  if (csv1 != csv8) return {false, "outputs differ between 1 and 8 workers"};
  return {true, "sweep output byte-identical for 1 and 8 workers (" +
                    std::to_string(csv1.size()) + " bytes)"};
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options,
                              std::ostream* progress) {
  using Clock = std::chrono::steady_clock;
  using CheckFn = std::function<CheckOutcome(bool, unsigned)>;
  const std::vector<std::pair<std::string, CheckFn>> checks = {
      {"constants-closed-form", check_constants},
      {"logistic-moment-bracket", check_logistic_bracket},
      {"power-tail-bracket", check_tail_bracket},
      {"fractional-identity", check_fractional_identity},
      {"rfolded-quadrature", check_rfolded_quadrature},
      {"dominate-fractional", check_dominate_fractional},
      {"dominate-rfolded", check_dominate_rfolded},
      {"dominate-korobov", check_dominate_korobov},
      {"dominate-hermite", check_dominate_hermite},
      {"e1-le-e2", check_e1_le_e2},
      {"decay-rate", check_decay_rate},
      {"reproducibility", check_reproducibility},
  };

  VerifyReport report;
  report.all_passed = true;
  for (const auto& [name, fn] : checks) {
    if (!options.only.empty() && options.only != name) continue;
    const auto start = Clock::now();
    CheckResult result;
    result.name = name;
    try {
      const CheckOutcome outcome = fn(options.tamper == name, options.workers);
      result.passed = outcome.passed;
      result.detail = outcome.detail;
    } catch (const std::exception& e) {
      result.passed = false;
      result.detail = std::string("exception: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    report.total_seconds += result.seconds;
    report.all_passed = report.all_passed && result.passed;
    if (progress) {
      char line[64];
      std::snprintf(line, sizeof(line), "%-6s %-24s %7.2fs  ",
                    result.passed ? "[pass]" : "[FAIL]", result.name.c_str(),
                    result.seconds);
      (*progress) << line << result.detail << "\n";
    }
    report.checks.push_back(std::move(result));
  }

  // Whole-battery runtime budget.
  if (options.only.empty() || options.only == "runtime-budget") {
    CheckResult budget;
    budget.name = "runtime-budget";
    const double limit = options.tamper == budget.name ? 0.0 : 300.0;
    budget.passed = report.total_seconds < limit;
    budget.detail = "battery took " + fmt(report.total_seconds) +
                    "s (budget " + fmt(limit) + "s)";
    budget.seconds = 0.0;
    report.all_passed = report.all_passed && budget.passed;
    if (progress) {
      char line[64];
      std::snprintf(line, sizeof(line), "%-6s %-24s %7.2fs  ",
                    budget.passed ? "[pass]" : "[FAIL]", budget.name.c_str(),
                    report.total_seconds);
      (*progress) << line << budget.detail << "\n";
    }
    report.checks.push_back(std::move(budget));
  }
  return report;
}

}  // namespace dimtrunc
