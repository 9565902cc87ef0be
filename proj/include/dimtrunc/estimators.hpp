#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dimtrunc/bounds.hpp"
#include "dimtrunc/coefficients.hpp"
#include "dimtrunc/kernels.hpp"
#include "dimtrunc/measures.hpp"

namespace dimtrunc {

// Monte Carlo run description. ref_level is the finite surrogate depth for
// the infinite sum; every k in k_grid must sit strictly below it.
struct McConfig {
  long long samples = 1000;
  long long ref_level = 10000;
  std::uint64_t seed = 1;
  std::vector<long long> k_grid;

  void validate() const;
};

// Partial sums of one sampled path at every truncation checkpoint plus the
// surrogate level, and the absolute-series sum at the surrogate level.
struct PathSums {
  std::vector<double> y_at_k;
  double y_ref = 0.0;
  double y_abs = 0.0;
};

// Flat row-major storage of all sampled paths. Row i holds the checkpoint
// sums for sample i followed by (y_ref, y_abs).
class PathEnsemble {
 public:
  PathEnsemble(McConfig config, std::vector<double> data);

  const McConfig& config() const { return config_; }
  long long samples() const { return config_.samples; }
  std::size_t checkpoints() const { return config_.k_grid.size(); }

  double y_at(long long sample, std::size_t checkpoint) const {
    return data_[static_cast<std::size_t>(sample) * stride_ + checkpoint];
  }
  double y_ref(long long sample) const {
    return data_[static_cast<std::size_t>(sample) * stride_ + checkpoints()];
  }
  double y_abs(long long sample) const {
    return data_[static_cast<std::size_t>(sample) * stride_ + checkpoints() + 1];
  }
  PathSums path(long long sample) const;

  // Index of k in the configured grid; throws if absent.
  std::size_t checkpoint_index(long long k) const;

 private:
  McConfig config_;
  std::size_t stride_;
  std::vector<double> data_;
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long long n = 0;
  long long ref_level = 0;
  // Analytic bound on the surrogate-truncation bias when one is available;
  // NaN with bias_certified = false otherwise.
  double bias_bound = 0.0;
  bool bias_certified = false;
  bool clamped = false;
};

// Draws config.samples independent paths. Sample i uses the substream
// derived from (config.seed, stream_tag, i), so the result is independent
// of worker_count and scheduling; worker_count 0 picks a default.
PathEnsemble sample_paths(const MeasureSpec& measure,
                          const CoefficientSequence& seq,
                          const McConfig& config, unsigned worker_count = 0,
                          std::uint64_t stream_tag = 0);

// Bound on E|sum_{j>level} x_j xi_j|^s for s in (0,2] or integer s <= 24.
double moment_tail_bound(const MeasureSpec& measure,
                         const CoefficientSequence& seq, long long level,
                         double s);

// Bound on the surrogate bias |E|Y-Y_k|^s - E|Y_ref-Y_k|^s|.
double surrogate_bias_bound(const MeasureSpec& measure,
                            const CoefficientSequence& seq, long long k,
                            double s, long long ref_level);

// Mean of |Y_ref - Y_k|^exponent with standard error and certified bias.
McEstimate moment_from_paths(const PathEnsemble& paths,
                             const MeasureSpec& measure,
                             const CoefficientSequence& seq, long long k,
                             double exponent);
McEstimate estimate_moment(const MeasureSpec& measure,
                           const CoefficientSequence& seq, long long k,
                           double exponent, const McConfig& config,
                           unsigned worker_count = 0);

// sqrt(mean sq_distance(K, Y_ref, Y_k)); the standard error of the mean is
// propagated through the square root by the delta method. The bias bound is
// certified for the fractional kernel only.
McEstimate err_kernel_from_paths(const PathEnsemble& paths,
                                 const KernelSpec& kernel,
                                 const MeasureSpec& measure,
                                 const CoefficientSequence& seq, long long k);
McEstimate estimate_err_kernel(const KernelSpec& kernel,
                               const MeasureSpec& measure,
                               const CoefficientSequence& seq, long long k,
                               const McConfig& config,
                               unsigned worker_count = 0);

// Mean-difference error from independent path pairs:
// K(Yx,Yz) - 2 K(Yx,Yz_k) + K(Yx_k,Yz_k) averaged, then sqrt. A negative
// mean (noise around zero) clamps to zero with the clamped flag set.
McEstimate e1_from_paths(const PathEnsemble& x_paths,
                         const PathEnsemble& z_paths, const KernelSpec& kernel,
                         long long k);
McEstimate estimate_e1(const KernelSpec& kernel, const MeasureSpec& measure,
                       const CoefficientSequence& seq, long long k,
                       const McConfig& config, unsigned worker_count = 0);

// Mean of exp(Y_abs^2) at the surrogate level (lower-biased; the bias is
// flagged, not certified).
McEstimate exp_abs_sq_from_paths(const PathEnsemble& paths);
McEstimate estimate_exp_abs_sq(const MeasureSpec& measure,
                               const CoefficientSequence& seq,
                               const McConfig& config,
                               unsigned worker_count = 0);

// What a sweep estimates and compares against: a kernel error or a Holder
// class error. Modes are picked from the measure when not forced.
struct SweepTarget {
  enum class Type { Kernel, Holder };
  Type type = Type::Kernel;
  KernelSpec kernel;
  HolderClass holder{1.0, 0.5};
  std::optional<FoldMode> fold_mode;
  std::optional<HermiteMode> hermite_mode;

  static SweepTarget for_kernel(KernelSpec kernel);
  static SweepTarget for_holder(HolderClass holder);
  std::string name() const;
};

// The theoretical bound a sweep row is compared against.
BoundReport target_bound(const SweepTarget& target, const MeasureSpec& measure,
                         const CoefficientSequence& seq, long long k,
                         const std::optional<ExpMomentEstimate>& exp_moment =
                             std::nullopt);

struct SweepRow {
  long long k = 0;
  McEstimate estimate;
  BoundReport bound;
  double ratio = 0.0;  // bound/estimate; 1 when both are zero, inf when only
                       // the estimate is
};

std::vector<SweepRow> sweep(const SweepTarget& target,
                            const MeasureSpec& measure,
                            const CoefficientSequence& seq,
                            const McConfig& config, unsigned worker_count = 0);

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // rms of log-scale residuals
};

// Least squares of log(estimate) against log(k) over rows with positive
// estimates; needs at least three of them.
DecayFit fit_decay_rate(const std::vector<SweepRow>& rows);

}  // namespace dimtrunc
