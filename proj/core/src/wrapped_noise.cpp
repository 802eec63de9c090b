#include "gkpqpc/wrapped_noise.hpp"

#include <cmath>
#include <stdexcept>

#include "gkpqpc/constants.hpp"

namespace gkpqpc {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kInvSqrt2 = 0.70710678118654752440;

// Image sums stop once a symmetric image pair contributes less than this
// fraction of the running total, with at least |k| <= 5 images taken.
constexpr double kRelativeTail = 1e-16;
constexpr int kMinImages = 5;
constexpr int kMaxImages = 100000;

inline double gauss_pdf(double x, double sigma) {
  const double t = x / sigma;
  return kInvSqrt2Pi / sigma * std::exp(-0.5 * t * t);
}

// P(lo < g < hi) for g ~ N(0, sigma^2), arranged to avoid cancellation in
// the tails: both-positive and both-negative intervals go through erfc.
double gauss_interval_prob(double lo, double hi, double sigma) {
  const double a = lo * kInvSqrt2 / sigma;
  const double b = hi * kInvSqrt2 / sigma;
  if (a >= 0.0) return 0.5 * (std::erfc(a) - std::erfc(b));
  if (b <= 0.0) return 0.5 * (std::erfc(-b) - std::erfc(-a));
  return 0.5 * (std::erf(b) - std::erf(a));
}

// Total probability of the union of intervals [center_k - half, center_k + half]
// with center_k = offset + k * period over all integers k.
double periodic_interval_prob(double offset, double half, double period, double sigma) {
  if (half <= 0.0) return 0.0;
  double total = gauss_interval_prob(offset - half, offset + half, sigma);
  for (int k = 1; k < kMaxImages; ++k) {
    const double cp = offset + k * period;
    const double cm = offset - k * period;
    const double term = gauss_interval_prob(cp - half, cp + half, sigma) +
                        gauss_interval_prob(cm - half, cm + half, sigma);
    total += term;
    if (k >= kMinImages && term < kRelativeTail * total) break;
  }
  return total;
}

}  // namespace

NoiseParams NoiseParams::from_std(double std_dev) {
  if (!std::isfinite(std_dev) || std_dev < 0.0)
    throw std::domain_error("NoiseParams: std_dev must be finite and >= 0");
  return NoiseParams{std_dev};
}

NoiseParams NoiseParams::from_squeezing_db(double db) { return squeezing_db_to_std(db); }

double NoiseParams::squeezing_db() const { return std_to_squeezing_db(*this); }

WrappedShift wrap_shift(double shift) {
  if (!std::isfinite(shift)) throw std::domain_error("wrap_shift: non-finite shift");
  double v = shift - kTwoSqrtPi * std::floor((shift + kSqrtPi) / kTwoSqrtPi);
  if (v >= kSqrtPi) v -= kTwoSqrtPi;
  if (v < -kSqrtPi) v += kTwoSqrtPi;
  return WrappedShift{v};
}

double OutcomeProbabilities::postselected_error() const {
  if (p_discard >= 1.0)
    throw std::domain_error("postselected_error undefined: everything discarded");
  return p_incorrect / (1.0 - p_discard);
}

double wrapped_pdf(double u, NoiseParams noise) {
  if (!std::isfinite(u)) throw std::domain_error("wrapped_pdf: non-finite u");
  if (!(noise.std_dev > 0.0)) throw std::domain_error("wrapped_pdf: std_dev must be > 0");
  const double sigma = noise.std_dev;
  double total = gauss_pdf(u, sigma);
  for (int k = 1; k < kMaxImages; ++k) {
    const double term =
        gauss_pdf(u + k * kTwoSqrtPi, sigma) + gauss_pdf(u - k * kTwoSqrtPi, sigma);
    total += term;
    if (k >= kMinImages && term < kRelativeTail * total) break;
  }
  return total;
}

WrappedShift sample_wrapped_shift(NoiseParams noise, RandomStream& stream) {
  if (!std::isfinite(noise.std_dev) || noise.std_dev < 0.0)
    throw std::domain_error("sample_wrapped_shift: invalid std_dev");
  if (noise.std_dev == 0.0) return WrappedShift{0.0};
  return wrap_shift(noise.std_dev * stream.next_gaussian());
}

OutcomeProbabilities outcome_probabilities(NoiseParams noise, double delta) {
  if (!(noise.std_dev > 0.0))
    throw std::domain_error("outcome_probabilities: std_dev must be > 0");
  if (!std::isfinite(delta) || delta < 0.0 || delta >= kHalfSqrtPi)
    throw std::domain_error("outcome_probabilities: delta outside [0, sqrt(pi)/2)");
  const double sigma = noise.std_dev;
  const double keep_half = kHalfSqrtPi - delta;
  OutcomeProbabilities probs;
  // Correct outcomes sit within keep_half of an even multiple of sqrt(pi),
  // incorrect ones within keep_half of an odd multiple; the discard band is
  // centred on the half-odd multiples with half-width delta.
  probs.p_correct = periodic_interval_prob(0.0, keep_half, kTwoSqrtPi, sigma);
  probs.p_incorrect = periodic_interval_prob(kSqrtPi, keep_half, kTwoSqrtPi, sigma);
  probs.p_discard = periodic_interval_prob(kHalfSqrtPi, delta, kSqrtPi, sigma);
  return probs;
}

NoiseParams squeezing_db_to_std(double db) {
  if (!std::isfinite(db)) throw std::domain_error("squeezing_db_to_std: non-finite dB");
  return NoiseParams{std::sqrt(kVacuumVariance * std::pow(10.0, -db / 10.0))};
}

double std_to_squeezing_db(NoiseParams noise) {
  if (!(noise.std_dev > 0.0))
    throw std::domain_error("std_to_squeezing_db: std_dev must be > 0");
  return -10.0 * std::log10(noise.std_dev * noise.std_dev / kVacuumVariance);
}

}  // namespace gkpqpc
