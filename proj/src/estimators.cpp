#include "dimtrunc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "dimtrunc/errors.hpp"
#include "dimtrunc/rng.hpp"

namespace dimtrunc {

namespace {

constexpr std::uint64_t kStreamBlock = 1ULL << 48;

unsigned resolve_workers(unsigned requested, long long samples) {
  unsigned w = requested;
  if (w == 0) {
    w = std::thread::hardware_concurrency();
    if (w == 0) w = 1;
    w = std::min(w, 8u);
  }
  w = std::min<unsigned>(w, 64);
  w = std::min<long long>(w, std::max<long long>(samples, 1));
  return std::max(w, 1u);
}

}  // namespace

void McConfig::validate() const {
  if (samples < 100) throw ArgumentError("mc config: samples must be >= 100");
  if (ref_level < 1) throw ArgumentError("mc config: ref_level must be >= 1");
  if (k_grid.empty()) throw ArgumentError("mc config: k_grid must be nonempty");
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    if (k_grid[i] < 0) throw ArgumentError("mc config: k values must be >= 0");
    if (i > 0 && k_grid[i] <= k_grid[i - 1]) {
      throw ArgumentError("mc config: k_grid must be strictly increasing");
    }
  }
  if (k_grid.back() >= ref_level) {
    throw ArgumentError("mc config: max(k_grid) must be < ref_level");
  }
}

PathEnsemble::PathEnsemble(McConfig config, std::vector<double> data)
    : config_(std::move(config)),
      stride_(config_.k_grid.size() + 2),
      data_(std::move(data)) {}

PathSums PathEnsemble::path(long long sample) const {
  PathSums p;
  p.y_at_k.resize(checkpoints());
  for (std::size_t c = 0; c < checkpoints(); ++c) p.y_at_k[c] = y_at(sample, c);
  p.y_ref = y_ref(sample);
  p.y_abs = y_abs(sample);
  return p;
}

std::size_t PathEnsemble::checkpoint_index(long long k) const {
  for (std::size_t c = 0; c < config_.k_grid.size(); ++c) {
    if (config_.k_grid[c] == k) return c;
  }
  throw ArgumentError("k=" + std::to_string(k) + " is not in the k_grid");
}

namespace {

struct DrawUniform01 {
  double operator()(RngStream& rng) const { return rng.next_unit(); }
};
struct DrawUniformSym {
  double operator()(RngStream& rng) const { return rng.next_unit() - 0.5; }
};
struct DrawGeneric {
  const MeasureSpec& measure;
  double operator()(RngStream& rng) const { return sample_one(measure, rng); }
};

template <class Draw>
void fill_rows(const Draw& draw, const std::vector<double>& coeff,
               const McConfig& config, std::uint64_t stream_tag,
               long long first, long long last, std::size_t stride,
               double* data) {
  const std::size_t m = config.k_grid.size();
  for (long long i = first; i < last; ++i) {
    RngStream rng(config.seed, stream_tag * kStreamBlock +
                                   static_cast<std::uint64_t>(i));
    double y = 0.0;
    double y_abs = 0.0;
    std::size_t next = 0;
    double* row = data + static_cast<std::size_t>(i) * stride;
    // Only the first grid entry can be 0; it records the empty sum.
    if (m > 0 && config.k_grid[0] == 0) row[next++] = 0.0;
    for (long long j = 1; j <= config.ref_level; ++j) {
      const double term = draw(rng) * coeff[static_cast<std::size_t>(j - 1)];
      y += term;
      y_abs += std::abs(term);
      if (next < m && j == config.k_grid[next]) row[next++] = y;
    }
    row[m] = y;
    row[m + 1] = y_abs;
  }
}

}  // namespace

PathEnsemble sample_paths(const MeasureSpec& measure,
                          const CoefficientSequence& seq,
                          const McConfig& config, unsigned worker_count,
                          std::uint64_t stream_tag) {
  config.validate();
  const std::size_t m = config.k_grid.size();
  const std::size_t stride = m + 2;
  std::vector<double> data(static_cast<std::size_t>(config.samples) * stride);

  std::vector<double> coeff(static_cast<std::size_t>(config.ref_level));
  for (long long j = 1; j <= config.ref_level; ++j) {
    coeff[static_cast<std::size_t>(j - 1)] = xi(seq, j);
  }

  const unsigned workers = resolve_workers(worker_count, config.samples);
  auto run_range = [&](long long first, long long last) {
    switch (measure.kind) {
      case Measure::Uniform01:
        fill_rows(DrawUniform01{}, coeff, config, stream_tag, first, last,
                  stride, data.data());
        break;
      case Measure::UniformSym:
        fill_rows(DrawUniformSym{}, coeff, config, stream_tag, first, last,
                  stride, data.data());
        break;
      default:
        fill_rows(DrawGeneric{measure}, coeff, config, stream_tag, first, last,
                  stride, data.data());
        break;
    }
  };

  if (workers == 1) {
    run_range(0, config.samples);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const long long chunk = (config.samples + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const long long first = static_cast<long long>(w) * chunk;
      const long long last = std::min<long long>(first + chunk, config.samples);
      if (first >= last) break;
      pool.emplace_back(run_range, first, last);
    }
    for (std::thread& t : pool) t.join();
  }

  return PathEnsemble(config, std::move(data));
}

double moment_tail_bound(const MeasureSpec& measure,
                         const CoefficientSequence& seq, long long level,
                         double s) {
  if (!(s > 0.0)) throw ArgumentError("moment_tail_bound: s must be > 0");
  const double abs_tail = tail_abs_sum(seq, level);
  if (abs_tail == 0.0) return 0.0;
  if (s <= 2.0) {
    const double m = std::abs(mean(measure)) * abs_tail;
    const double second = m * m + variance(measure) * tail_sq_sum(seq, level);
    double best = std::pow(second, 0.5 * s);
    if (s <= 1.0) {
      best = std::min(best, std::pow(moment_abs(measure, 1) * abs_tail, s));
    }
    return best;
  }
  const double rounded = std::round(s);
  if (std::abs(s - rounded) > 1e-12 || rounded > 24.0) {
    throw ArgumentError(
        "moment_tail_bound: exponent must be in (0,2] or an integer <= 24");
  }
  const int M = static_cast<int>(rounded);
  return c_constant_upper(measure, M) * std::pow(abs_tail, M);
}

namespace {

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

double surrogate_bias_bound(const MeasureSpec& measure,
                            const CoefficientSequence& seq, long long k,
                            double s, long long ref_level) {
  if (!(s > 0.0)) throw ArgumentError("surrogate_bias_bound: s must be > 0");
  if (tail_abs_sum(seq, ref_level) == 0.0) return 0.0;

  if (s <= 1.0) {
    // ||a|^s - |b|^s| <= |a-b|^s.
    return moment_tail_bound(measure, seq, ref_level, s);
  }
  const double d2 = moment_tail_bound(measure, seq, ref_level, 2.0);
  const double b2 = moment_tail_bound(measure, seq, k, 2.0);
  if (s <= 2.0) {
    // Mean value + Cauchy-Schwarz + Jensen:
    // bias <= s sqrt(E d^2) (sqrt(E b^2) + sqrt(E d^2))^(s-1).
    return s * std::sqrt(d2) * std::pow(std::sqrt(b2) + std::sqrt(d2), s - 1.0);
  }
  const double rounded = std::round(s);
  if (std::abs(s - rounded) > 1e-12 || rounded > 24.0) {
    throw ArgumentError(
        "surrogate_bias_bound: exponent must be in (0,2] or an integer <= 24");
  }
  // Binomial expansion of |(b+d)^M - b^M| with independent blocks.
  const int M = static_cast<int>(rounded);
  const double tail_ref = tail_abs_sum(seq, ref_level);
  const double tail_k = tail_abs_sum(seq, k);
  double bias = 0.0;
  for (int i = 1; i <= M; ++i) {
    const double delta_part =
        c_constant_upper(measure, i) * std::pow(tail_ref, i);
    const double base_part =
        (i == M) ? 1.0
                 : c_constant_upper(measure, M - i) * std::pow(tail_k, M - i);
    bias += binomial(M, i) * delta_part * base_part;
  }
  return bias;
}

namespace {

struct MeanResult {
  double mean = 0.0;
  double std_error = 0.0;
};

// Mean and standard error of the mean, accumulated in sample order so the
// result does not depend on the worker count used to generate the paths.
MeanResult mean_and_se(const std::vector<double>& values) {
  const std::size_t n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) {
    const double d = v - mean;
    ss += d * d;
  }
  if (n < 2) return {mean, 0.0};
  const double var = ss / (static_cast<double>(n) - 1.0);
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace

McEstimate moment_from_paths(const PathEnsemble& paths,
                             const MeasureSpec& measure,
                             const CoefficientSequence& seq, long long k,
                             double exponent) {
  const std::size_t c = paths.checkpoint_index(k);
  std::vector<double> values(static_cast<std::size_t>(paths.samples()));
  for (long long i = 0; i < paths.samples(); ++i) {
    const double diff = std::abs(paths.y_ref(i) - paths.y_at(i, c));
    values[static_cast<std::size_t>(i)] = std::pow(diff, exponent);
  }
  const MeanResult m = mean_and_se(values);
  McEstimate est;
  est.value = m.mean;
  est.std_error = m.std_error;
  est.n = paths.samples();
  est.ref_level = paths.config().ref_level;
  est.bias_bound =
      surrogate_bias_bound(measure, seq, k, exponent, est.ref_level);
  est.bias_certified = true;
  return est;
}

McEstimate estimate_moment(const MeasureSpec& measure,
                           const CoefficientSequence& seq, long long k,
                           double exponent, const McConfig& config,
                           unsigned worker_count) {
  // Validate the exponent before paying for sampling.
  moment_tail_bound(measure, seq, 0, exponent);
  const PathEnsemble paths = sample_paths(measure, seq, config, worker_count);
  return moment_from_paths(paths, measure, seq, k, exponent);
}

namespace {

void check_kernel_domain(const KernelSpec& kernel, const MeasureSpec& measure,
                         const CoefficientSequence& seq) {
  if (kernel.kind == Kernel::RFoldedWiener) {
    if (!measure.nonnegative_support() || !seq.all_nonnegative()) {
      throw ArgumentError(
          "r-folded kernel requires nonnegative coordinates and coefficients");
    }
  }
}

McEstimate sqrt_of_mean(const MeanResult& m, long long n, long long ref_level) {
  McEstimate est;
  est.n = n;
  est.ref_level = ref_level;
  if (m.mean > 0.0) {
    est.value = std::sqrt(m.mean);
    est.std_error = m.std_error / (2.0 * est.value);
  } else {
    est.value = 0.0;
    est.std_error = 0.0;
  }
  return est;
}

constexpr double kUncertified = std::numeric_limits<double>::quiet_NaN();

}  // namespace

McEstimate err_kernel_from_paths(const PathEnsemble& paths,
                                 const KernelSpec& kernel,
                                 const MeasureSpec& measure,
                                 const CoefficientSequence& seq, long long k) {
  check_kernel_domain(kernel, measure, seq);
  const std::size_t c = paths.checkpoint_index(k);
  std::vector<double> values(static_cast<std::size_t>(paths.samples()));
  for (long long i = 0; i < paths.samples(); ++i) {
    values[static_cast<std::size_t>(i)] =
        sq_distance(kernel, paths.y_ref(i), paths.y_at(i, c));
  }
  const MeanResult m = mean_and_se(values);
  McEstimate est = sqrt_of_mean(m, paths.samples(), paths.config().ref_level);
  if (kernel.kind == Kernel::FractionalWiener) {
    // The squared distance equals |Y_ref - Y_k|^(2 beta) pointwise, so the
    // moment bias bound transfers through the square root.
    const double bias_m = surrogate_bias_bound(measure, seq, k,
                                               2.0 * kernel.beta,
                                               est.ref_level);
    est.bias_bound =
        m.mean > 0.0 ? bias_m / (2.0 * est.value) : std::sqrt(bias_m);
    est.bias_certified = true;
  } else {
    est.bias_bound = kUncertified;
    est.bias_certified = false;
  }
  return est;
}

McEstimate estimate_err_kernel(const KernelSpec& kernel,
                               const MeasureSpec& measure,
                               const CoefficientSequence& seq, long long k,
                               const McConfig& config, unsigned worker_count) {
  check_kernel_domain(kernel, measure, seq);
  const PathEnsemble paths = sample_paths(measure, seq, config, worker_count);
  return err_kernel_from_paths(paths, kernel, measure, seq, k);
}

McEstimate e1_from_paths(const PathEnsemble& x_paths,
                         const PathEnsemble& z_paths, const KernelSpec& kernel,
                         long long k) {
  if (x_paths.samples() != z_paths.samples()) {
    throw ArgumentError("e1: path ensembles must have equal sample counts");
  }
  const std::size_t cx = x_paths.checkpoint_index(k);
  const std::size_t cz = z_paths.checkpoint_index(k);
  std::vector<double> values(static_cast<std::size_t>(x_paths.samples()));
  for (long long i = 0; i < x_paths.samples(); ++i) {
    const double xr = x_paths.y_ref(i);
    const double xk = x_paths.y_at(i, cx);
    const double zr = z_paths.y_ref(i);
    const double zk = z_paths.y_at(i, cz);
    values[static_cast<std::size_t>(i)] = eval(kernel, xr, zr) -
                                          2.0 * eval(kernel, xr, zk) +
                                          eval(kernel, xk, zk);
  }
  const MeanResult m = mean_and_se(values);
  McEstimate est = sqrt_of_mean(m, x_paths.samples(),
                                x_paths.config().ref_level);
  est.clamped = m.mean < 0.0;
  est.bias_bound = kUncertified;
  est.bias_certified = false;
  return est;
}

McEstimate estimate_e1(const KernelSpec& kernel, const MeasureSpec& measure,
                       const CoefficientSequence& seq, long long k,
                       const McConfig& config, unsigned worker_count) {
  check_kernel_domain(kernel, measure, seq);
  const PathEnsemble x_paths =
      sample_paths(measure, seq, config, worker_count, /*stream_tag=*/0);
  const PathEnsemble z_paths =
      sample_paths(measure, seq, config, worker_count, /*stream_tag=*/1);
  return e1_from_paths(x_paths, z_paths, kernel, k);
}

McEstimate exp_abs_sq_from_paths(const PathEnsemble& paths) {
  std::vector<double> values(static_cast<std::size_t>(paths.samples()));
  for (long long i = 0; i < paths.samples(); ++i) {
    const double a2 = paths.y_abs(i) * paths.y_abs(i);
    if (a2 > 700.0) {
      throw NumericError("exp moment overflow: Y_abs^2 = " +
                         std::to_string(a2) + " at sample " +
                         std::to_string(i));
    }
    values[static_cast<std::size_t>(i)] = std::exp(a2);
  }
  const MeanResult m = mean_and_se(values);
  McEstimate est;
  est.value = m.mean;
  est.std_error = m.std_error;
  est.n = paths.samples();
  est.ref_level = paths.config().ref_level;
  est.bias_bound = kUncertified;  // lower-biased in ref_level; not certified
  est.bias_certified = false;
  return est;
}

McEstimate estimate_exp_abs_sq(const MeasureSpec& measure,
                               const CoefficientSequence& seq,
                               const McConfig& config, unsigned worker_count) {
  const PathEnsemble paths = sample_paths(measure, seq, config, worker_count);
  return exp_abs_sq_from_paths(paths);
}

SweepTarget SweepTarget::for_kernel(KernelSpec kernel) {
  SweepTarget t;
  t.type = Type::Kernel;
  t.kernel = std::move(kernel);
  return t;
}

SweepTarget SweepTarget::for_holder(HolderClass holder) {
  SweepTarget t;
  t.type = Type::Holder;
  t.holder = holder;
  return t;
}

std::string SweepTarget::name() const {
  return type == Type::Kernel ? kernel.name() : holder.name();
}

namespace {

FoldMode pick_fold_mode(const SweepTarget& target, const MeasureSpec& measure) {
  if (target.fold_mode.has_value()) return *target.fold_mode;
  if (target.kernel.kind == Kernel::RFoldedWiener) {
    return measure.kind == Measure::Uniform01 ? FoldMode::Bounded
                                              : FoldMode::Unbounded;
  }
  return (measure.kind == Measure::Uniform01 ||
          measure.kind == Measure::UniformSym)
             ? FoldMode::Bounded
             : FoldMode::Unbounded;
}

HermiteMode pick_hermite_mode(const SweepTarget& target,
                              const MeasureSpec& measure) {
  if (target.hermite_mode.has_value()) return *target.hermite_mode;
  return (measure.kind == Measure::Uniform01 ||
          measure.kind == Measure::UniformSym)
             ? HermiteMode::BoundedExp
             : HermiteMode::SplitExp;
}

}  // namespace

BoundReport target_bound(const SweepTarget& target, const MeasureSpec& measure,
                         const CoefficientSequence& seq, long long k,
                         const std::optional<ExpMomentEstimate>& exp_moment) {
  if (target.type == SweepTarget::Type::Holder) {
    return holder_error_bound(target.holder, measure, seq, k);
  }
  const KernelSpec& kernel = target.kernel;
  switch (kernel.kind) {
    case Kernel::FractionalWiener:
      return holder_error_bound(HolderClass{1.0, kernel.beta}, measure, seq, k);
    case Kernel::RFoldedWiener:
      return rfolded_bound(measure, seq, k, kernel.r,
                           pick_fold_mode(target, measure));
    case Kernel::TwoSidedRFolded:
      return twosided_bound(measure, seq, k, kernel.r,
                            pick_fold_mode(target, measure));
    case Kernel::Korobov:
      return korobov_bound(measure, seq, k, kernel.weight);
    case Kernel::Hermite:
      return hermite_bound(measure, seq, k, kernel.weight,
                           pick_hermite_mode(target, measure), exp_moment);
  }
  throw ArgumentError("target_bound: unknown kernel");
}

std::vector<SweepRow> sweep(const SweepTarget& target,
                            const MeasureSpec& measure,
                            const CoefficientSequence& seq,
                            const McConfig& config, unsigned worker_count) {
  if (target.type == SweepTarget::Type::Kernel) {
    check_kernel_domain(target.kernel, measure, seq);
  }
  const PathEnsemble paths = sample_paths(measure, seq, config, worker_count);

  std::optional<ExpMomentEstimate> exp_moment;
  if (target.type == SweepTarget::Type::Kernel &&
      target.kernel.kind == Kernel::Hermite &&
      pick_hermite_mode(target, measure) == HermiteMode::SplitExp) {
    const McEstimate e = exp_abs_sq_from_paths(paths);
    exp_moment = ExpMomentEstimate{e.value, e.std_error, e.n};
  }

  std::vector<SweepRow> rows;
  rows.reserve(config.k_grid.size());
  for (long long k : config.k_grid) {
    SweepRow row;
    row.k = k;
    if (target.type == SweepTarget::Type::Holder) {
      const McEstimate m = moment_from_paths(paths, measure, seq, k,
                                             2.0 * target.holder.beta);
      McEstimate est;
      est.n = m.n;
      est.ref_level = m.ref_level;
      if (m.value > 0.0) {
        est.value = target.holder.C * std::sqrt(m.value);
        est.std_error = target.holder.C * m.std_error / (2.0 * std::sqrt(m.value));
        est.bias_bound = target.holder.C * m.bias_bound / (2.0 * std::sqrt(m.value));
      } else {
        est.value = 0.0;
        est.std_error = 0.0;
        est.bias_bound = target.holder.C * std::sqrt(m.bias_bound);
      }
      est.bias_certified = true;
      row.estimate = est;
    } else {
      row.estimate = err_kernel_from_paths(paths, target.kernel, measure, seq, k);
    }
    row.bound = target_bound(target, measure, seq, k, exp_moment);
    if (row.estimate.value > 0.0) {
      row.ratio = row.bound.value / row.estimate.value;
    } else if (row.bound.value == 0.0) {
      row.ratio = 1.0;  // both sides vanish beyond a finite list
    } else {
      row.ratio = std::numeric_limits<double>::infinity();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

DecayFit fit_decay_rate(const std::vector<SweepRow>& rows) {
  std::vector<std::pair<double, double>> points;
  for (const SweepRow& row : rows) {
    if (row.k >= 1 && row.estimate.value > 0.0) {
      points.emplace_back(std::log(static_cast<double>(row.k)),
                          std::log(row.estimate.value));
    }
  }
  if (points.size() < 3) {
    throw ArgumentError("fit_decay_rate: needs >= 3 positive estimates");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (auto [x, y] : points) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points.size());
  const double denom = n * sxx - sx * sx;
  DecayFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0.0;
  for (auto [x, y] : points) {
    const double r = y - (fit.intercept + fit.slope * x);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace dimtrunc
