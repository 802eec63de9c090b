#pragma once

#include <stdexcept>

#include "gkpqpc/qpc.hpp"
#include "gkpqpc/wrapped_noise.hpp"

namespace gkpqpc {

struct ExactFailure {
  double e_x = 0.0;
  double e_z = 0.0;
  double p_e = 0.0;
};

class SizeBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact logical failure probabilities for i.i.d. per-qubit ternary outcomes
// (true logical value +1 in both bases). Dispatches between the two routes
// below; shapes beyond 16 qubits raise SizeBudgetError.
ExactFailure exact_failure(QpcShape shape, const OutcomeProbabilities& probs);

// Route 1: walks all 3^(n*m) outcome grids through the real decoders,
// accumulating the probability of grids that score as logical errors.
ExactFailure exact_failure_by_enumeration(QpcShape shape, const OutcomeProbabilities& probs);

// Route 2: collapses each block to its outcome counts. Both decoders depend
// only on per-block counts of (kept-correct, kept-flipped, discarded), so
// block states reduce to multinomials and the cross-block vote to another.
// Independent of the decoder implementation.
ExactFailure exact_failure_by_block_counts(QpcShape shape, const OutcomeProbabilities& probs);

}  // namespace gkpqpc
