#pragma once

#include <initializer_list>
#include <vector>

#include "gkpqpc/hrm.hpp"

namespace gkpqpc {

// Code parameters: blocks of qubits_per_block qubits each.
struct QpcShape {
  int blocks = 1;           // n
  int qubits_per_block = 1;  // m

  static QpcShape make(int blocks, int qubits_per_block);
  int total() const { return blocks * qubits_per_block; }
  bool operator==(const QpcShape&) const = default;
};

// Row-major grid of ternary measurement outcomes, one row per block.
class OutcomeGrid {
 public:
  explicit OutcomeGrid(QpcShape shape);
  OutcomeGrid(QpcShape shape, std::initializer_list<HrmOutcome> cells);

  QpcShape shape() const { return shape_; }
  HrmOutcome at(int block, int qubit) const { return cells_[index(block, qubit)]; }
  void set(int block, int qubit, HrmOutcome v) { cells_[index(block, qubit)] = v; }
  HrmOutcome cell(int flat_index) const { return cells_[flat_index]; }
  void set_cell(int flat_index, HrmOutcome v) { cells_[flat_index] = v; }

 private:
  int index(int block, int qubit) const { return block * shape_.qubits_per_block + qubit; }
  QpcShape shape_;
  std::vector<HrmOutcome> cells_;
};

enum class LogicalResult : unsigned char { PlusOne, MinusOne, HeraldedFailure };

// X basis: drop blocks containing any discard, take the parity of each
// surviving block, then the strict majority of those parities. No surviving
// blocks or a tied vote is a heralded failure.
LogicalResult decode_x(const OutcomeGrid& grid);

// Z basis: strict majority of the non-discarded entries within each block
// (failure if any block has none), then the product of the block votes.
LogicalResult decode_z(const OutcomeGrid& grid);

// A decode attempt counts as a logical error when it yields the wrong value
// or announces heralded failure.
bool logical_error_indicator(LogicalResult result, int true_value);

}  // namespace gkpqpc
