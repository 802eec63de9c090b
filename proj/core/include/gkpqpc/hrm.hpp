#pragma once

#include "gkpqpc/wrapped_noise.hpp"

namespace gkpqpc {

// Danger-zone half-width. delta = 0 reproduces conventional binning to the
// nearest multiple of sqrt(pi).
struct HrmParams {
  double delta = 0.0;

  static HrmParams from_delta(double delta);
};

// Decomposition of a raw measurement outcome s = n*sqrt(pi) + deviation with
// |deviation| <= sqrt(pi)/2.
struct SyndromeValue {
  double raw = 0.0;
  long long grid_index = 0;
  double deviation = 0.0;
};

// Ternary measurement result: a kept binary value or a located erasure.
enum class HrmOutcome : unsigned char { KeepPlus, KeepMinus, Discard };

// +1 / -1 for kept outcomes, 0 for Discard.
int outcome_sign(HrmOutcome outcome);

// Ground-truth-aware label for a sampled shift (simulator side).
enum class TrueShiftClass : unsigned char { Correct, Incorrect, Discard };

SyndromeValue decompose(double s);

// Discards when the deviation falls inside the danger zone, otherwise keeps
// the parity of the grid index (+1 even, -1 odd).
HrmOutcome classify(double s, HrmParams params);

// Correct if |u| < sqrt(pi)/2 - delta, Incorrect if |u| > sqrt(pi)/2 + delta,
// Discard otherwise (boundaries go to Discard).
TrueShiftClass classify_true_shift(WrappedShift u, HrmParams params);

// True-value-aware conversion used by the simulator: a Correct shift keeps
// the true +1 outcome, an Incorrect one flips it.
HrmOutcome outcome_for_true_plus(TrueShiftClass c);

}  // namespace gkpqpc
