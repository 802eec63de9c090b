#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gkpqpc/hrm.hpp"
#include "gkpqpc/qpc.hpp"
#include "gkpqpc/stats.hpp"
#include "gkpqpc/wrapped_noise.hpp"

namespace gkpqpc {

struct TrialConfig {
  QpcShape shape;
  NoiseParams noise;  // channel shift std deviation
  HrmParams hrm;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
};

struct TrialOutcome {
  bool x_error = false;
  bool z_error = false;
  int discards = 0;  // erased cells across both measurement grids
};

// One teleportation-based QEC trial at code capacity: every qubit takes one
// independent Gaussian shift per quadrature, the two resulting ternary grids
// are decoded in the X and Z bases against true logical value +1. The random
// stream is addressed by (seed, trial_index, qubit), so any schedule of
// trials reproduces identical outcomes.
TrialOutcome run_trial(const TrialConfig& config, std::uint64_t trial_index);

// Aggregated integer counts; merging tallies is commutative, which makes all
// multi-worker results schedule-independent. Trials are striped over a fixed
// number of batches (by trial index) for bootstrap resampling.
inline constexpr int kTallyBatches = 100;

struct TrialTally {
  std::uint64_t trials = 0;
  std::uint64_t x_errors = 0;
  std::uint64_t z_errors = 0;
  std::uint64_t discards = 0;
  std::array<std::uint64_t, kTallyBatches> batch_trials{};
  std::array<std::uint64_t, kTallyBatches> batch_x_errors{};
  std::array<std::uint64_t, kTallyBatches> batch_z_errors{};

  void add(const TrialTally& other);
  double p_e_estimate() const;  // 1 - (1-e_x)(1-e_z), clamped away from 0
};

TrialTally run_trial_tally(const TrialConfig& config, int workers = 1);

struct FailureEstimate {
  IntervalEstimate e_x;
  IntervalEstimate e_z;
  IntervalEstimate p_e;  // point estimate via 1-(1-e_x)(1-e_z); CI mapped from the Wilson bounds
  std::uint64_t trials = 0;
  std::uint64_t x_errors = 0;
  std::uint64_t z_errors = 0;
  double discard_rate = 0.0;  // mean discarded cells / (2 n m)
};

FailureEstimate summarize(const TrialTally& tally, QpcShape shape);
FailureEstimate estimate_failure(const TrialConfig& config, int workers = 1);

struct SweepPoint {
  QpcShape shape;
  double xi = 0.0;
  double delta = 0.0;
  FailureEstimate estimate;
};

// Cartesian shapes x xi grid; each point gets its own derived stream, so the
// table is reproducible point-by-point under any worker count.
std::vector<SweepPoint> sweep(const std::vector<QpcShape>& shapes,
                              const std::vector<double>& xi_grid, HrmParams hrm,
                              std::uint64_t trials, std::uint64_t seed, int workers = 1);

struct CrossoverEstimate {
  QpcShape smaller;
  QpcShape larger;
  bool crossed = false;
  double xi_cross = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

struct ThresholdReport {
  std::vector<QpcShape> ladder;
  std::vector<CrossoverEstimate> pairs;
  bool has_threshold = false;
  // Largest noise at which moving up the ladder still reduces the failure
  // probability: the maximum over the consecutive-pair crossovers.
  double threshold = 0.0;
  double threshold_ci_lo = 0.0;
  double threshold_ci_hi = 0.0;
  double delta = 0.0;
  double interval_lo = 0.0;
  double interval_hi = 0.0;
  std::uint64_t trials_per_point = 0;
  std::uint64_t seed = 0;
};

// For each consecutive ladder pair, locates the crossing of the p_e curves by
// sign bisection with a final log-linear interpolation; confidence intervals
// come from bootstrap resampling over trial batches. Pairs whose curves do
// not cross inside the interval are reported as crossed = false.
ThresholdReport find_threshold(const std::vector<QpcShape>& shapes, HrmParams hrm,
                               double xi_lo, double xi_hi, std::uint64_t trials_per_point,
                               std::uint64_t seed, int workers = 1);

// Per block count n in n_list, picks the block length m whose estimated
// failure probability at the probe is within `slack` of the best over m,
// and among those minimizes the |e_x - e_z| imbalance. The slack keeps the
// symmetry criterion from selecting shapes dominated by vote-tie artifacts.
std::vector<QpcShape> balance_shapes(const std::vector<int>& n_list, double xi_probe,
                                     HrmParams hrm, std::uint64_t trials, std::uint64_t seed,
                                     int workers = 1, int m_max = 10, double slack = 1.2);

struct DeltaThresholdPoint {
  double delta = 0.0;
  ThresholdReport report;
};

struct DeltaOptimum {
  double delta_star = 0.0;
  double threshold = 0.0;  // measured threshold at the best grid point
  std::size_t best_index = 0;
  std::vector<DeltaThresholdPoint> per_delta;
};

// Runs find_threshold per delta over a fixed ladder; delta_star refines the
// best grid point by the vertex of a parabola through its neighbours.
DeltaOptimum optimize_delta(const std::vector<QpcShape>& shapes,
                            const std::vector<double>& delta_grid, double xi_lo, double xi_hi,
                            std::uint64_t trials, std::uint64_t seed, int workers = 1);

// Same sweep but re-balances the ladder for every delta (probe at the
// interval midpoint); used by the CLI's auto-ladder mode.
DeltaOptimum optimize_delta_auto(const std::vector<int>& n_list,
                                 const std::vector<double>& delta_grid, double xi_lo,
                                 double xi_hi, std::uint64_t trials, std::uint64_t seed,
                                 int workers = 1);

}  // namespace gkpqpc
