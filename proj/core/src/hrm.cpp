#include "gkpqpc/hrm.hpp"

#include <cmath>
#include <stdexcept>

#include "gkpqpc/constants.hpp"

namespace gkpqpc {

HrmParams HrmParams::from_delta(double delta) {
  if (!std::isfinite(delta) || delta < 0.0 || delta >= kHalfSqrtPi)
    throw std::domain_error("HrmParams: delta outside [0, sqrt(pi)/2)");
  return HrmParams{delta};
}

int outcome_sign(HrmOutcome outcome) {
  switch (outcome) {
    case HrmOutcome::KeepPlus:
      return 1;
    case HrmOutcome::KeepMinus:
      return -1;
    case HrmOutcome::Discard:
      return 0;
  }
  return 0;
}

SyndromeValue decompose(double s) {
  if (!std::isfinite(s)) throw std::domain_error("decompose: non-finite outcome");
  // std::round ties away from zero, which keeps the decomposition sign-symmetric
  // at the half-grid boundary.
  const double n = std::round(s / kSqrtPi);
  return SyndromeValue{s, static_cast<long long>(n), s - n * kSqrtPi};
}

HrmOutcome classify(double s, HrmParams params) {
  const SyndromeValue v = decompose(s);
  if (kHalfSqrtPi - std::fabs(v.deviation) < params.delta) return HrmOutcome::Discard;
  return (v.grid_index % 2 == 0) ? HrmOutcome::KeepPlus : HrmOutcome::KeepMinus;
}

TrueShiftClass classify_true_shift(WrappedShift u, HrmParams params) {
  const double a = std::fabs(u.value);
  if (a < kHalfSqrtPi - params.delta) return TrueShiftClass::Correct;
  if (a > kHalfSqrtPi + params.delta) return TrueShiftClass::Incorrect;
  return TrueShiftClass::Discard;
}

HrmOutcome outcome_for_true_plus(TrueShiftClass c) {
  switch (c) {
    case TrueShiftClass::Correct:
      return HrmOutcome::KeepPlus;
    case TrueShiftClass::Incorrect:
      return HrmOutcome::KeepMinus;
    case TrueShiftClass::Discard:
      return HrmOutcome::Discard;
  }
  return HrmOutcome::Discard;
}

}  // namespace gkpqpc
