#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <vector>

#include "gkpqpc/qpc.hpp"
#include "gkpqpc/rng.hpp"
#include "test_oracles.hpp"

using namespace gkpqpc;

namespace {

constexpr HrmOutcome P = HrmOutcome::KeepPlus;
constexpr HrmOutcome M = HrmOutcome::KeepMinus;
constexpr HrmOutcome E = HrmOutcome::Discard;

OutcomeGrid grid_of(QpcShape shape, std::vector<HrmOutcome> cells) {
  OutcomeGrid g(shape);
  for (int i = 0; i < shape.total(); ++i) g.set_cell(i, cells[i]);
  return g;
}

std::vector<std::vector<int>> to_blocks(const OutcomeGrid& g) {
  std::vector<std::vector<int>> blocks;
  for (int b = 0; b < g.shape().blocks; ++b) {
    std::vector<int> row;
    for (int q = 0; q < g.shape().qubits_per_block; ++q)
      row.push_back(outcome_sign(g.at(b, q)));
    blocks.push_back(std::move(row));
  }
  return blocks;
}

int result_sign(LogicalResult r) {
  if (r == LogicalResult::PlusOne) return 1;
  if (r == LogicalResult::MinusOne) return -1;
  return 0;
}

}  // namespace

TEST_CASE("decode_x applies the block-parity / majority rule") {
  const QpcShape s32 = QpcShape::make(3, 2);
  CHECK(decode_x(grid_of(s32, {P, M, M, M, P, P})) == LogicalResult::PlusOne);
  CHECK(decode_x(grid_of(s32, {P, P, P, M, E, P})) == LogicalResult::HeraldedFailure);
  const QpcShape s11 = QpcShape::make(1, 1);
  CHECK(decode_x(grid_of(s11, {E})) == LogicalResult::HeraldedFailure);
  CHECK(decode_x(grid_of(s11, {M})) == LogicalResult::MinusOne);
}

TEST_CASE("decode_z applies the block-vote / parity rule") {
  const QpcShape s23 = QpcShape::make(2, 3);
  CHECK(decode_z(grid_of(s23, {P, P, M, M, M, E})) == LogicalResult::MinusOne);
  const QpcShape s22 = QpcShape::make(2, 2);
  CHECK(decode_z(grid_of(s22, {P, M, P, P})) == LogicalResult::HeraldedFailure);
  const QpcShape s11 = QpcShape::make(1, 1);
  CHECK(decode_z(grid_of(s11, {P})) == LogicalResult::PlusOne);
  CHECK(decode_z(grid_of(s11, {M})) == LogicalResult::MinusOne);
  CHECK(decode_z(grid_of(s11, {E})) == LogicalResult::HeraldedFailure);
}

TEST_CASE("random grids agree with the literal-rule transcription") {
  RandomStream stream(314);
  const std::vector<QpcShape> shapes = {
      QpcShape::make(1, 1), QpcShape::make(1, 4), QpcShape::make(4, 1), QpcShape::make(2, 2),
      QpcShape::make(3, 2), QpcShape::make(2, 3), QpcShape::make(3, 3), QpcShape::make(9, 1),
      QpcShape::make(1, 9), QpcShape::make(4, 2)};
  for (const QpcShape& shape : shapes) {
    for (int rep = 0; rep < 4000; ++rep) {
      OutcomeGrid g(shape);
      for (int i = 0; i < shape.total(); ++i) {
        const double u = stream.next_uniform();
        g.set_cell(i, u < 0.45 ? P : (u < 0.8 ? M : E));
      }
      const auto blocks = to_blocks(g);
      CHECK(result_sign(decode_x(g)) == testoracle::literal_decode_x(blocks));
      CHECK(result_sign(decode_z(g)) == testoracle::literal_decode_z(blocks));
    }
  }
}

TEST_CASE("error-free grids decode to the true value in both bases") {
  for (int n : {1, 2, 5, 8}) {
    for (int m : {1, 3, 4, 7}) {
      OutcomeGrid g(QpcShape::make(n, m));
      for (int i = 0; i < n * m; ++i) g.set_cell(i, P);
      CHECK(decode_x(g) == LogicalResult::PlusOne);
      CHECK(decode_z(g) == LogicalResult::PlusOne);
    }
  }
}

TEST_CASE("X basis tolerates erased blocks while a strict majority survives") {
  RandomStream stream(21);
  for (int rep = 0; rep < 2000; ++rep) {
    const int n = 3 + static_cast<int>(stream.next_uniform() * 5);
    const int m = 1 + static_cast<int>(stream.next_uniform() * 4);
    OutcomeGrid g(QpcShape::make(n, m));
    int erased_blocks = 0;
    for (int b = 0; b < n; ++b) {
      const bool erase = stream.next_uniform() < 0.3;
      if (erase) ++erased_blocks;
      for (int q = 0; q < m; ++q)
        g.set(b, q, erase && q == 0 ? E : P);  // no incorrect outcomes anywhere
    }
    if (n - erased_blocks > erased_blocks) {
      CHECK(decode_x(g) == LogicalResult::PlusOne);
    }
  }
}

TEST_CASE("Z basis tolerates erasures while every block keeps a clean majority") {
  RandomStream stream(22);
  for (int rep = 0; rep < 2000; ++rep) {
    const int n = 1 + static_cast<int>(stream.next_uniform() * 5);
    const int m = 3 + 2 * static_cast<int>(stream.next_uniform() * 3);  // odd block sizes
    OutcomeGrid g(QpcShape::make(n, m));
    for (int b = 0; b < n; ++b) {
      int erased = 0;
      for (int q = 0; q < m; ++q) {
        const bool erase = erased < (m - 1) / 2 && stream.next_uniform() < 0.25;
        if (erase) ++erased;
        g.set(b, q, erase ? E : P);
      }
    }
    CHECK(decode_z(g) == LogicalResult::PlusOne);
  }
}

TEST_CASE("decoders are invariant under block and in-block permutations") {
  RandomStream stream(77);
  const QpcShape shape = QpcShape::make(4, 3);
  for (int rep = 0; rep < 1500; ++rep) {
    OutcomeGrid g(shape);
    for (int i = 0; i < shape.total(); ++i) {
      const double u = stream.next_uniform();
      g.set_cell(i, u < 0.4 ? P : (u < 0.75 ? M : E));
    }
    auto blocks = to_blocks(g);
    const LogicalResult x0 = decode_x(g);
    const LogicalResult z0 = decode_z(g);

    // shuffle blocks and cells within blocks using the stream itself
    for (int pass = 0; pass < 3; ++pass) {
      const int i = static_cast<int>(stream.next_uniform() * shape.blocks);
      const int j = static_cast<int>(stream.next_uniform() * shape.blocks);
      std::swap(blocks[std::min(i, shape.blocks - 1)], blocks[std::min(j, shape.blocks - 1)]);
      for (auto& row : blocks) {
        const int a = static_cast<int>(stream.next_uniform() * row.size());
        const int b = static_cast<int>(stream.next_uniform() * row.size());
        std::swap(row[std::min<std::size_t>(a, row.size() - 1)],
                  row[std::min<std::size_t>(b, row.size() - 1)]);
      }
    }
    OutcomeGrid shuffled(shape);
    for (int b = 0; b < shape.blocks; ++b) {
      for (int q = 0; q < shape.qubits_per_block; ++q) {
        const int v = blocks[b][q];
        shuffled.set(b, q, v == 0 ? E : (v > 0 ? P : M));
      }
    }
    CHECK(decode_x(shuffled) == x0);
    CHECK(decode_z(shuffled) == z0);
  }
}

TEST_CASE("logical_error_indicator treats heralded failure as an error") {
  CHECK_FALSE(logical_error_indicator(LogicalResult::PlusOne, +1));
  CHECK(logical_error_indicator(LogicalResult::MinusOne, +1));
  CHECK_FALSE(logical_error_indicator(LogicalResult::MinusOne, -1));
  CHECK(logical_error_indicator(LogicalResult::HeraldedFailure, +1));
  CHECK(logical_error_indicator(LogicalResult::HeraldedFailure, -1));
  CHECK_THROWS_AS(logical_error_indicator(LogicalResult::PlusOne, 0), std::invalid_argument);
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(QpcShape::make(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(QpcShape::make(3, 0), std::invalid_argument);
  CHECK(QpcShape::make(5, 4).total() == 20);
}
