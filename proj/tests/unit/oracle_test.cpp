#include <doctest.h>

#include <cmath>

#include "gkpqpc/constants.hpp"
#include "gkpqpc/oracle.hpp"

using namespace gkpqpc;

namespace {

OutcomeProbabilities triple(double pc, double pi, double pd) {
  return OutcomeProbabilities{pc, pi, pd};
}

}  // namespace

TEST_CASE("single qubit fails on incorrect or discarded outcomes") {
  const ExactFailure f = exact_failure(QpcShape::make(1, 1), triple(0.9, 0.05, 0.05));
  CHECK(f.e_x == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(f.e_z == doctest::Approx(0.1).epsilon(1e-14));
  const ExactFailure clean = exact_failure(QpcShape::make(1, 1), triple(1.0, 0.0, 0.0));
  CHECK(clean.e_x == 0.0);
  CHECK(clean.e_z == 0.0);
  CHECK(clean.p_e == 0.0);
}

TEST_CASE("2x2 enumeration value is reproduced by both routes") {
  const OutcomeProbabilities probs = triple(0.8, 0.1, 0.1);
  const QpcShape shape = QpcShape::make(2, 2);
  const ExactFailure enumerated = exact_failure_by_enumeration(shape, probs);
  const ExactFailure collapsed = exact_failure_by_block_counts(shape, probs);
  CHECK(enumerated.e_x == doctest::Approx(0.3305).epsilon(1e-12));
  CHECK(enumerated.e_z == doctest::Approx(0.3591).epsilon(1e-12));
  CHECK(collapsed.e_x == doctest::Approx(enumerated.e_x).epsilon(1e-13));
  CHECK(collapsed.e_z == doctest::Approx(enumerated.e_z).epsilon(1e-13));
  CHECK(enumerated.p_e ==
        doctest::Approx(1.0 - (1.0 - enumerated.e_x) * (1.0 - enumerated.e_z)).epsilon(1e-14));
}

TEST_CASE("block-count collapse equals full enumeration for every small shape") {
  const OutcomeProbabilities sets[] = {triple(0.8, 0.1, 0.1), triple(0.7, 0.12, 0.18),
                                       triple(0.55, 0.05, 0.40), triple(0.95, 0.05, 0.0)};
  for (int n = 1; n <= 9; ++n) {
    for (int m = 1; m <= 9; ++m) {
      if (n * m > 9) continue;
      const QpcShape shape = QpcShape::make(n, m);
      for (const auto& probs : sets) {
        const ExactFailure a = exact_failure_by_enumeration(shape, probs);
        const ExactFailure b = exact_failure_by_block_counts(shape, probs);
        CHECK(std::fabs(a.e_x - b.e_x) < 1e-12);
        CHECK(std::fabs(a.e_z - b.e_z) < 1e-12);
      }
    }
  }
  // a couple of larger shapes across the dispatch boundary
  for (const QpcShape shape : {QpcShape::make(4, 3), QpcShape::make(2, 6)}) {
    const auto probs = triple(0.7, 0.12, 0.18);
    const ExactFailure a = exact_failure_by_enumeration(shape, probs);
    const ExactFailure b = exact_failure_by_block_counts(shape, probs);
    CHECK(std::fabs(a.e_x - b.e_x) < 1e-12);
    CHECK(std::fabs(a.e_z - b.e_z) < 1e-12);
  }
}

TEST_CASE("failure probabilities grow with channel noise at zero danger zone") {
  const QpcShape shape = QpcShape::make(3, 2);
  double prev_x = -1.0, prev_z = -1.0;
  for (double sigma = 0.2; sigma < 1.01; sigma += 0.05) {
    const ExactFailure f =
        exact_failure(shape, outcome_probabilities(NoiseParams::from_std(sigma), 0.0));
    CHECK(f.e_x > prev_x);
    CHECK(f.e_z > prev_z);
    CHECK(f.e_x >= 0.0);
    CHECK(f.e_z <= 1.0);
    prev_x = f.e_x;
    prev_z = f.e_z;
  }
}

TEST_CASE("oracle enforces the enumeration budget") {
  CHECK_THROWS_AS(exact_failure(QpcShape::make(5, 4), triple(0.9, 0.05, 0.05)),
                  SizeBudgetError);
  CHECK_NOTHROW(exact_failure(QpcShape::make(4, 4), triple(0.9, 0.05, 0.05)));
  CHECK_THROWS_AS(exact_failure(QpcShape::make(1, 1), triple(0.5, 0.1, 0.1)),
                  std::invalid_argument);  // not a distribution
}

TEST_CASE("repetition-style shapes: m = 1 protects X far better than Z") {
  // with one qubit per block, X decodes by majority over blocks while Z takes
  // a bare n-fold parity, so e_x <= e_z for any same per-qubit noise
  for (int n : {3, 5, 7}) {
    const ExactFailure f = exact_failure(
        QpcShape::make(n, 1), outcome_probabilities(NoiseParams::from_std(0.55), 0.0));
    CHECK(f.e_x < f.e_z);
  }
}
