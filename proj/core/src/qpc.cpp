#include "gkpqpc/qpc.hpp"

#include <stdexcept>

namespace gkpqpc {

QpcShape QpcShape::make(int blocks, int qubits_per_block) {
  if (blocks < 1 || qubits_per_block < 1)
    throw std::invalid_argument("QpcShape: blocks and qubits_per_block must be >= 1");
  return QpcShape{blocks, qubits_per_block};
}

OutcomeGrid::OutcomeGrid(QpcShape shape)
    : shape_(shape),
      cells_(static_cast<std::size_t>(shape.total()), HrmOutcome::KeepPlus) {}

OutcomeGrid::OutcomeGrid(QpcShape shape, std::initializer_list<HrmOutcome> cells)
    : shape_(shape), cells_(cells) {
  if (cells_.size() != static_cast<std::size_t>(shape.total()))
    throw std::invalid_argument("OutcomeGrid: cell count does not match shape");
}

LogicalResult decode_x(const OutcomeGrid& grid) {
  const QpcShape shape = grid.shape();
  int plus_parities = 0;
  int minus_parities = 0;
  for (int b = 0; b < shape.blocks; ++b) {
    bool dropped = false;
    int parity = 1;
    for (int q = 0; q < shape.qubits_per_block; ++q) {
      const HrmOutcome o = grid.at(b, q);
      if (o == HrmOutcome::Discard) dropped = true;
      else if (o == HrmOutcome::KeepMinus) parity = -parity;
    }
    if (dropped) continue;
    (parity > 0 ? plus_parities : minus_parities)++;
  }
  if (plus_parities > minus_parities) return LogicalResult::PlusOne;
  if (minus_parities > plus_parities) return LogicalResult::MinusOne;
  return LogicalResult::HeraldedFailure;
}

LogicalResult decode_z(const OutcomeGrid& grid) {
  const QpcShape shape = grid.shape();
  int product = 1;
  for (int b = 0; b < shape.blocks; ++b) {
    int plus = 0;
    int minus = 0;
    for (int q = 0; q < shape.qubits_per_block; ++q) {
      const HrmOutcome o = grid.at(b, q);
      if (o == HrmOutcome::KeepPlus) ++plus;
      else if (o == HrmOutcome::KeepMinus) ++minus;
    }
    if (plus == minus) return LogicalResult::HeraldedFailure;  // includes all-discard
    if (minus > plus) product = -product;
  }
  return product > 0 ? LogicalResult::PlusOne : LogicalResult::MinusOne;
}

bool logical_error_indicator(LogicalResult result, int true_value) {
  if (true_value != 1 && true_value != -1)
    throw std::invalid_argument("logical_error_indicator: true_value must be +1 or -1");
  switch (result) {
    case LogicalResult::HeraldedFailure:
      return true;
    case LogicalResult::PlusOne:
      return true_value != 1;
    case LogicalResult::MinusOne:
      return true_value != -1;
  }
  return true;
}

}  // namespace gkpqpc
