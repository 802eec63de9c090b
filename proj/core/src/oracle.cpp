#include "gkpqpc/oracle.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace gkpqpc {

namespace {

constexpr int kEnumerationLimit = 12;  // 3^12 grids is still cheap
constexpr int kBudgetLimit = 16;

double multinomial(int n, int a, int b) {
  // n! / (a! b! (n-a-b)!) for small n; exact in double up to n = 16
  double r = 1.0;
  int c = n - a - b;
  int k = 0;
  for (int i = 0; i < a; ++i) r *= static_cast<double>(++k) / (i + 1);
  for (int i = 0; i < b; ++i) r *= static_cast<double>(++k) / (i + 1);
  for (int i = 0; i < c; ++i) r *= static_cast<double>(++k) / (i + 1);
  return r;
}

void validate(QpcShape shape, const OutcomeProbabilities& probs) {
  const double sum = probs.p_correct + probs.p_incorrect + probs.p_discard;
  if (probs.p_correct < 0 || probs.p_incorrect < 0 || probs.p_discard < 0 ||
      std::fabs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("exact_failure: probabilities must be a distribution");
  if (shape.total() > kBudgetLimit)
    throw SizeBudgetError("exact_failure: shape exceeds the 16-qubit enumeration budget");
}

ExactFailure finish(double e_x, double e_z) {
  return ExactFailure{e_x, e_z, 1.0 - (1.0 - e_x) * (1.0 - e_z)};
}

}  // namespace

ExactFailure exact_failure(QpcShape shape, const OutcomeProbabilities& probs) {
  validate(shape, probs);
  if (shape.total() <= kEnumerationLimit) return exact_failure_by_enumeration(shape, probs);
  return exact_failure_by_block_counts(shape, probs);
}

ExactFailure exact_failure_by_enumeration(QpcShape shape, const OutcomeProbabilities& probs) {
  validate(shape, probs);
  const int cells = shape.total();
  const std::array<HrmOutcome, 3> outcome = {HrmOutcome::KeepPlus, HrmOutcome::KeepMinus,
                                             HrmOutcome::Discard};
  const std::array<double, 3> weight = {probs.p_correct, probs.p_incorrect, probs.p_discard};

  std::vector<int> digits(cells, 0);
  OutcomeGrid grid(shape);
  for (int i = 0; i < cells; ++i) grid.set_cell(i, outcome[0]);

  double e_x = 0.0;
  double e_z = 0.0;
  while (true) {
    double w = 1.0;
    for (int i = 0; i < cells; ++i) w *= weight[digits[i]];
    if (w > 0.0) {
      if (logical_error_indicator(decode_x(grid), +1)) e_x += w;
      if (logical_error_indicator(decode_z(grid), +1)) e_z += w;
    }
    // base-3 odometer
    int pos = 0;
    while (pos < cells) {
      if (++digits[pos] < 3) {
        grid.set_cell(pos, outcome[digits[pos]]);
        break;
      }
      digits[pos] = 0;
      grid.set_cell(pos, outcome[0]);
      ++pos;
    }
    if (pos == cells) break;
  }
  return finish(e_x, e_z);
}

ExactFailure exact_failure_by_block_counts(QpcShape shape, const OutcomeProbabilities& probs) {
  validate(shape, probs);
  const int n = shape.blocks;
  const int m = shape.qubits_per_block;
  const double pc = probs.p_correct;
  const double pi = probs.p_incorrect;
  const double pd = probs.p_discard;

  // Per-block states seen by the X decoder: dropped (any discard), or kept
  // with parity +1 / -1. Closed forms from the binomial parity identity.
  const double survive = std::pow(pc + pi, m);
  const double signed_pow = std::pow(pc - pi, m);
  const double x_drop = 1.0 - survive;
  const double x_parity_plus = 0.5 * (survive + signed_pow);
  const double x_parity_minus = 0.5 * (survive - signed_pow);

  // X error: over n blocks, #(+1 parities) fails to be a strict majority of
  // the kept blocks.
  double e_x = 0.0;
  for (int dropped = 0; dropped <= n; ++dropped) {
    for (int plus = 0; plus + dropped <= n; ++plus) {
      const int minus = n - dropped - plus;
      if (plus > minus) continue;
      e_x += multinomial(n, dropped, plus) * std::pow(x_drop, dropped) *
             std::pow(x_parity_plus, plus) * std::pow(x_parity_minus, minus);
    }
  }

  // Per-block states seen by the Z decoder: strict-majority vote over the
  // non-discarded entries.
  double z_vote_plus = 0.0;
  double z_vote_minus = 0.0;
  for (int a = 0; a <= m; ++a) {
    for (int b = 0; a + b <= m; ++b) {
      const int e = m - a - b;
      const double w = multinomial(m, a, b) * std::pow(pc, a) * std::pow(pi, b) * std::pow(pd, e);
      if (a > b) z_vote_plus += w;
      else if (b > a) z_vote_minus += w;
    }
  }

  // Z succeeds when every block votes and an even number of votes are flipped.
  double z_good = 0.0;
  for (int flipped = 0; flipped <= n; flipped += 2) {
    z_good += multinomial(n, flipped, 0) * std::pow(z_vote_minus, flipped) *
              std::pow(z_vote_plus, n - flipped);
  }
  return finish(e_x, 1.0 - z_good);
}

}  // namespace gkpqpc
