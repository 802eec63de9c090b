#include "gkpqpc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "gkpqpc/constants.hpp"
#include "gkpqpc/rng.hpp"

namespace gkpqpc {

namespace {

constexpr std::uint64_t kTrialStreamTag = 0x747269616cull;  // stream salt
constexpr int kBootstrapResamples = 200;
constexpr int kMaxBisections = 10;
constexpr double kBisectionWidth = 0.004;

std::uint64_t trial_stream_key(std::uint64_t seed) {
  return derive_stream_key(seed, {kTrialStreamTag});
}

void validate_config(const TrialConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("TrialConfig: trials must be >= 1");
  if (config.shape.blocks < 1 || config.shape.qubits_per_block < 1)
    throw std::invalid_argument("TrialConfig: invalid shape");
  if (!std::isfinite(config.noise.std_dev) || config.noise.std_dev < 0.0)
    throw std::invalid_argument("TrialConfig: invalid noise");
  if (config.hrm.delta < 0.0 || config.hrm.delta >= kHalfSqrtPi)
    throw std::invalid_argument("TrialConfig: invalid delta");
}

int resolve_workers(int workers) {
  if (workers > 0) return std::min(workers, 256);
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(std::min(hc, 16u));
}

// Splits [0, count) into contiguous chunks and merges the integer tallies.
template <typename Body>
TrialTally parallel_tally(std::uint64_t count, int workers, const Body& body) {
  workers = std::min<std::uint64_t>(resolve_workers(workers), count);
  if (workers <= 1) {
    TrialTally tally;
    body(0, count, tally);
    return tally;
  }
  std::vector<TrialTally> partial(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = count / workers;
  const std::uint64_t rest = count % workers;
  std::uint64_t begin = 0;
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t size = chunk + (static_cast<std::uint64_t>(w) < rest ? 1 : 0);
    pool.emplace_back([&body, &partial, w, begin, size] {
      body(begin, begin + size, partial[w]);
    });
    begin += size;
  }
  for (auto& t : pool) t.join();
  TrialTally total;
  for (const auto& p : partial) total.add(p);
  return total;
}

}  // namespace

void TrialTally::add(const TrialTally& other) {
  trials += other.trials;
  x_errors += other.x_errors;
  z_errors += other.z_errors;
  discards += other.discards;
  for (int i = 0; i < kTallyBatches; ++i) {
    batch_trials[i] += other.batch_trials[i];
    batch_x_errors[i] += other.batch_x_errors[i];
    batch_z_errors[i] += other.batch_z_errors[i];
  }
}

double TrialTally::p_e_estimate() const {
  const double n = static_cast<double>(trials);
  const double floor_p = 0.5 / n;
  const double ex = std::max(static_cast<double>(x_errors) / n, floor_p);
  const double ez = std::max(static_cast<double>(z_errors) / n, floor_p);
  return 1.0 - (1.0 - ex) * (1.0 - ez);
}

TrialOutcome run_trial(const TrialConfig& config, std::uint64_t trial_index) {
  validate_config(config);
  const std::uint64_t key = trial_stream_key(config.seed);
  const int cells = config.shape.total();
  const double sigma = config.noise.std_dev;

  OutcomeGrid grid_x(config.shape);
  OutcomeGrid grid_z(config.shape);
  int discards = 0;
  for (int q = 0; q < cells; ++q) {
    // One counter block per qubit: u displaces the position quadrature seen
    // by the Z-basis grid, v the momentum quadrature seen by the X-basis grid.
    const auto [gu, gv] = gaussian_pair(key, trial_index, static_cast<std::uint64_t>(q));
    const TrueShiftClass cu = classify_true_shift(wrap_shift(sigma * gu), config.hrm);
    const TrueShiftClass cv = classify_true_shift(wrap_shift(sigma * gv), config.hrm);
    grid_z.set_cell(q, outcome_for_true_plus(cu));
    grid_x.set_cell(q, outcome_for_true_plus(cv));
    discards += (cu == TrueShiftClass::Discard) + (cv == TrueShiftClass::Discard);
  }
  TrialOutcome out;
  out.x_error = logical_error_indicator(decode_x(grid_x), +1);
  out.z_error = logical_error_indicator(decode_z(grid_z), +1);
  out.discards = discards;
  return out;
}

TrialTally run_trial_tally(const TrialConfig& config, int workers) {
  validate_config(config);
  return parallel_tally(config.trials, workers,
                        [&config](std::uint64_t begin, std::uint64_t end, TrialTally& tally) {
                          for (std::uint64_t t = begin; t < end; ++t) {
                            const TrialOutcome o = run_trial(config, t);
                            const int batch = static_cast<int>(t % kTallyBatches);
                            ++tally.trials;
                            ++tally.batch_trials[batch];
                            if (o.x_error) {
                              ++tally.x_errors;
                              ++tally.batch_x_errors[batch];
                            }
                            if (o.z_error) {
                              ++tally.z_errors;
                              ++tally.batch_z_errors[batch];
                            }
                            tally.discards += static_cast<std::uint64_t>(o.discards);
                          }
                        });
}

FailureEstimate summarize(const TrialTally& tally, QpcShape shape) {
  FailureEstimate est;
  est.trials = tally.trials;
  est.x_errors = tally.x_errors;
  est.z_errors = tally.z_errors;
  est.e_x = wilson_interval(tally.x_errors, tally.trials);
  est.e_z = wilson_interval(tally.z_errors, tally.trials);
  est.p_e.value = 1.0 - (1.0 - est.e_x.value) * (1.0 - est.e_z.value);
  est.p_e.lo = 1.0 - (1.0 - est.e_x.lo) * (1.0 - est.e_z.lo);
  est.p_e.hi = 1.0 - (1.0 - est.e_x.hi) * (1.0 - est.e_z.hi);
  est.discard_rate = static_cast<double>(tally.discards) /
                     (static_cast<double>(tally.trials) * 2.0 * shape.total());
  return est;
}

FailureEstimate estimate_failure(const TrialConfig& config, int workers) {
  return summarize(run_trial_tally(config, workers), config.shape);
}

std::vector<SweepPoint> sweep(const std::vector<QpcShape>& shapes,
                              const std::vector<double>& xi_grid, HrmParams hrm,
                              std::uint64_t trials, std::uint64_t seed, int workers) {
  if (shapes.empty() || xi_grid.empty())
    throw std::invalid_argument("sweep: shapes and xi grid must be non-empty");
  std::vector<SweepPoint> table;
  table.reserve(shapes.size() * xi_grid.size());
  for (const QpcShape& shape : shapes) {
    for (std::size_t xi_index = 0; xi_index < xi_grid.size(); ++xi_index) {
      TrialConfig config{shape, NoiseParams::from_std(xi_grid[xi_index]), hrm, trials,
                         derive_stream_key(seed, {static_cast<std::uint64_t>(shape.blocks),
                                                  static_cast<std::uint64_t>(shape.qubits_per_block),
                                                  static_cast<std::uint64_t>(xi_index)})};
      table.push_back(SweepPoint{shape, xi_grid[xi_index], hrm.delta,
                                 estimate_failure(config, workers)});
    }
  }
  return table;
}

namespace {

struct PairEvaluation {
  double xi = 0.0;
  TrialTally small_tally;
  TrialTally large_tally;
  double log_diff = 0.0;  // ln p_e(larger) - ln p_e(smaller)
};

class PairEvaluator {
 public:
  PairEvaluator(QpcShape smaller, QpcShape larger, HrmParams hrm, std::uint64_t trials,
                std::uint64_t seed, std::uint64_t pair_index, int workers)
      : smaller_(smaller), larger_(larger), hrm_(hrm), trials_(trials), seed_(seed),
        pair_index_(pair_index), workers_(workers) {}

  PairEvaluation evaluate(double xi) {
    PairEvaluation ev;
    ev.xi = xi;
    ev.small_tally = tally_for(smaller_, xi, 0);
    ev.large_tally = tally_for(larger_, xi, 1);
    ev.log_diff = std::log(ev.large_tally.p_e_estimate()) -
                  std::log(ev.small_tally.p_e_estimate());
    ++eval_index_;
    return ev;
  }

 private:
  TrialTally tally_for(QpcShape shape, double xi, std::uint64_t slot) {
    TrialConfig config{shape, NoiseParams::from_std(xi), hrm_, trials_,
                       derive_stream_key(seed_, {pair_index_, eval_index_, slot})};
    return run_trial_tally(config, workers_);
  }

  QpcShape smaller_;
  QpcShape larger_;
  HrmParams hrm_;
  std::uint64_t trials_;
  std::uint64_t seed_;
  std::uint64_t pair_index_;
  int workers_;
  std::uint64_t eval_index_ = 0;
};

double interpolate_crossing(const PairEvaluation& lo, const PairEvaluation& hi) {
  const double da = lo.log_diff;
  const double db = hi.log_diff;
  if (da == db) return 0.5 * (lo.xi + hi.xi);
  const double x = lo.xi + (hi.xi - lo.xi) * (-da) / (db - da);
  return std::clamp(x, lo.xi, hi.xi);
}

double resampled_log_pe(const TrialTally& tally, const std::array<int, kTallyBatches>& picks) {
  std::uint64_t trials = 0, xe = 0, ze = 0;
  for (int i = 0; i < kTallyBatches; ++i) {
    const int b = picks[i];
    trials += tally.batch_trials[b];
    xe += tally.batch_x_errors[b];
    ze += tally.batch_z_errors[b];
  }
  const double n = std::max<double>(1.0, static_cast<double>(trials));
  const double floor_p = 0.5 / n;
  const double ex = std::max(static_cast<double>(xe) / n, floor_p);
  const double ez = std::max(static_cast<double>(ze) / n, floor_p);
  return std::log(1.0 - (1.0 - ex) * (1.0 - ez));
}

// Percentile bootstrap of the interpolated crossing over batch resamples.
std::pair<double, double> bootstrap_crossing_ci(const PairEvaluation& lo,
                                                const PairEvaluation& hi, std::uint64_t seed,
                                                std::uint64_t pair_index) {
  RandomStream stream(derive_stream_key(seed, {pair_index, 0xB007ull}));
  std::vector<double> crossings;
  crossings.reserve(kBootstrapResamples);
  for (int rep = 0; rep < kBootstrapResamples; ++rep) {
    std::array<int, kTallyBatches> picks{};
    for (int i = 0; i < kTallyBatches; ++i) {
      picks[i] = std::min(kTallyBatches - 1,
                          static_cast<int>(stream.next_uniform() * kTallyBatches));
    }
    const double da = resampled_log_pe(lo.large_tally, picks) -
                      resampled_log_pe(lo.small_tally, picks);
    const double db = resampled_log_pe(hi.large_tally, picks) -
                      resampled_log_pe(hi.small_tally, picks);
    double x;
    if ((da < 0.0) == (db < 0.0)) {
      x = da < 0.0 ? hi.xi : lo.xi;  // resample lost the sign change; clamp
    } else {
      x = da == db ? 0.5 * (lo.xi + hi.xi)
                   : std::clamp(lo.xi + (hi.xi - lo.xi) * (-da) / (db - da), lo.xi, hi.xi);
    }
    crossings.push_back(x);
  }
  return {quantile(crossings, 0.025), quantile(crossings, 0.975)};
}

}  // namespace

ThresholdReport find_threshold(const std::vector<QpcShape>& shapes, HrmParams hrm,
                               double xi_lo, double xi_hi, std::uint64_t trials_per_point,
                               std::uint64_t seed, int workers) {
  if (shapes.size() < 2) throw std::invalid_argument("find_threshold: need at least 2 shapes");
  if (!(xi_lo > 0.0) || !(xi_hi > xi_lo) || xi_hi >= 1.0)
    throw std::invalid_argument("find_threshold: interval must satisfy 0 < lo < hi < 1");

  ThresholdReport report;
  report.ladder = shapes;
  report.delta = hrm.delta;
  report.interval_lo = xi_lo;
  report.interval_hi = xi_hi;
  report.trials_per_point = trials_per_point;
  report.seed = seed;

  for (std::size_t i = 0; i + 1 < shapes.size(); ++i) {
    PairEvaluator evaluator(shapes[i], shapes[i + 1], hrm, trials_per_point, seed,
                            static_cast<std::uint64_t>(i), workers);
    CrossoverEstimate cross;
    cross.smaller = shapes[i];
    cross.larger = shapes[i + 1];

    PairEvaluation lo = evaluator.evaluate(xi_lo);
    PairEvaluation hi = evaluator.evaluate(xi_hi);
    if ((lo.log_diff < 0.0) == (hi.log_diff < 0.0)) {
      cross.crossed = false;  // curves do not cross inside the interval
      report.pairs.push_back(cross);
      continue;
    }
    for (int iter = 0; iter < kMaxBisections && hi.xi - lo.xi > kBisectionWidth; ++iter) {
      PairEvaluation mid = evaluator.evaluate(0.5 * (lo.xi + hi.xi));
      if ((mid.log_diff < 0.0) == (lo.log_diff < 0.0)) lo = mid;
      else hi = mid;
    }
    cross.crossed = true;
    cross.xi_cross = interpolate_crossing(lo, hi);
    std::tie(cross.ci_lo, cross.ci_hi) =
        bootstrap_crossing_ci(lo, hi, seed, static_cast<std::uint64_t>(i));
    report.pairs.push_back(cross);
  }

  for (const CrossoverEstimate& c : report.pairs) {
    if (c.crossed && (!report.has_threshold || c.xi_cross > report.threshold)) {
      report.has_threshold = true;
      report.threshold = c.xi_cross;
      report.threshold_ci_lo = c.ci_lo;
      report.threshold_ci_hi = c.ci_hi;
    }
  }
  return report;
}

std::vector<QpcShape> balance_shapes(const std::vector<int>& n_list, double xi_probe,
                                     HrmParams hrm, std::uint64_t trials, std::uint64_t seed,
                                     int workers, int m_max, double slack) {
  if (n_list.empty()) throw std::invalid_argument("balance_shapes: empty n list");
  if (m_max < 1) throw std::invalid_argument("balance_shapes: m_max must be >= 1");
  std::vector<QpcShape> ladder;
  ladder.reserve(n_list.size());
  for (int n : n_list) {
    std::vector<FailureEstimate> by_m;
    by_m.reserve(m_max);
    double best_pe = 1.0;
    for (int m = 1; m <= m_max; ++m) {
      TrialConfig config{QpcShape::make(n, m), NoiseParams::from_std(xi_probe), hrm, trials,
                         derive_stream_key(seed, {static_cast<std::uint64_t>(n),
                                                  static_cast<std::uint64_t>(m)})};
      by_m.push_back(estimate_failure(config, workers));
      best_pe = std::min(best_pe, by_m.back().p_e.value);
    }
    int chosen = 1;
    double best_imbalance = 2.0;
    for (int m = 1; m <= m_max; ++m) {
      const FailureEstimate& est = by_m[m - 1];
      if (est.p_e.value > slack * best_pe) continue;
      const double imbalance = std::fabs(est.e_x.value - est.e_z.value);
      if (imbalance < best_imbalance) {
        best_imbalance = imbalance;
        chosen = m;
      }
    }
    ladder.push_back(QpcShape::make(n, chosen));
  }
  return ladder;
}

namespace {

DeltaOptimum optimize_delta_impl(const std::vector<double>& delta_grid, double xi_lo,
                                 double xi_hi, std::uint64_t trials, std::uint64_t seed,
                                 int workers,
                                 const std::function<std::vector<QpcShape>(double, std::uint64_t)>&
                                     ladder_for_delta) {
  if (delta_grid.empty()) throw std::invalid_argument("optimize_delta: empty delta grid");
  DeltaOptimum opt;
  for (std::size_t i = 0; i < delta_grid.size(); ++i) {
    const double delta = delta_grid[i];
    const std::uint64_t sub_seed = derive_stream_key(seed, {static_cast<std::uint64_t>(i)});
    const std::vector<QpcShape> ladder = ladder_for_delta(delta, sub_seed);
    ThresholdReport rep = find_threshold(ladder, HrmParams::from_delta(delta), xi_lo, xi_hi,
                                         trials, sub_seed, workers);
    opt.per_delta.push_back(DeltaThresholdPoint{delta, std::move(rep)});
  }
  bool found = false;
  for (std::size_t i = 0; i < opt.per_delta.size(); ++i) {
    const ThresholdReport& rep = opt.per_delta[i].report;
    if (rep.has_threshold && (!found || rep.threshold > opt.threshold)) {
      found = true;
      opt.best_index = i;
      opt.threshold = rep.threshold;
      opt.delta_star = opt.per_delta[i].delta;
    }
  }
  if (!found) return opt;

  // Quadratic refinement around the best grid point when both neighbours
  // carry thresholds; the vertex stays clamped to the neighbour span.
  const std::size_t b = opt.best_index;
  if (b > 0 && b + 1 < opt.per_delta.size() && opt.per_delta[b - 1].report.has_threshold &&
      opt.per_delta[b + 1].report.has_threshold) {
    const double x0 = opt.per_delta[b - 1].delta, y0 = opt.per_delta[b - 1].report.threshold;
    const double x1 = opt.per_delta[b].delta, y1 = opt.per_delta[b].report.threshold;
    const double x2 = opt.per_delta[b + 1].delta, y2 = opt.per_delta[b + 1].report.threshold;
    const double d0 = (y1 - y0) / (x1 - x0);
    const double d1 = (y2 - y1) / (x2 - x1);
    const double curvature = (d1 - d0) / (x2 - x0);
    if (curvature < 0.0) {
      const double vertex = 0.5 * (x0 + x1) - d0 / (2.0 * curvature);
      opt.delta_star = std::clamp(vertex, x0, x2);
    }
  }
  return opt;
}

}  // namespace

DeltaOptimum optimize_delta(const std::vector<QpcShape>& shapes,
                            const std::vector<double>& delta_grid, double xi_lo, double xi_hi,
                            std::uint64_t trials, std::uint64_t seed, int workers) {
  if (shapes.size() < 2) throw std::invalid_argument("optimize_delta: need >= 2 shapes");
  return optimize_delta_impl(delta_grid, xi_lo, xi_hi, trials, seed, workers,
                             [&shapes](double, std::uint64_t) { return shapes; });
}

DeltaOptimum optimize_delta_auto(const std::vector<int>& n_list,
                                 const std::vector<double>& delta_grid, double xi_lo,
                                 double xi_hi, std::uint64_t trials, std::uint64_t seed,
                                 int workers) {
  const double probe = 0.5 * (xi_lo + xi_hi);
  return optimize_delta_impl(
      delta_grid, xi_lo, xi_hi, trials, seed, workers,
      [&n_list, probe, trials, workers](double delta, std::uint64_t sub_seed) {
        return balance_shapes(n_list, probe, HrmParams::from_delta(delta), trials,
                              derive_stream_key(sub_seed, {0xBA1ull}), workers);
      });
}

}  // namespace gkpqpc
