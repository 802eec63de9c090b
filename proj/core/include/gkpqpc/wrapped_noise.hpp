#pragma once

#include "gkpqpc/rng.hpp"

namespace gkpqpc {

// Per-quadrature shift standard deviation, in quadrature units (the sqrt(pi)
// grid lives in these units). One scalar serves both the channel strength
// and the finite-squeezing width of a GKP peak: both enter the math only as
// the standard deviation of a zero-mean Gaussian shift.
struct NoiseParams {
  double std_dev = 0.0;

  static NoiseParams from_std(double std_dev);
  static NoiseParams from_squeezing_db(double db);
  double squeezing_db() const;
};

// A shift reduced to the canonical window [-sqrt(pi), sqrt(pi)).
struct WrappedShift {
  double value = 0.0;
};

// Reduces an arbitrary real shift modulo 2*sqrt(pi) into the canonical window.
WrappedShift wrap_shift(double shift);

struct OutcomeProbabilities {
  double p_correct = 0.0;
  double p_incorrect = 0.0;
  double p_discard = 0.0;

  double success_probability() const { return 1.0 - p_discard; }
  // Probability of a wrong outcome among kept qubits; requires p_discard < 1.
  double postselected_error() const;
};

// Density of the wrapped Gaussian shift at u, computed as the image sum
// sum_k N(u + 2k*sqrt(pi); 0, std_dev^2). Requires std_dev > 0.
double wrapped_pdf(double u, NoiseParams noise);

// Draws a Gaussian shift and folds it into the canonical window.
WrappedShift sample_wrapped_shift(NoiseParams noise, RandomStream& stream);

// Exact ternary outcome probabilities of the danger-zone measurement for a
// wrapped Gaussian shift: correct |u| < sqrt(pi)/2 - delta, incorrect
// |u| > sqrt(pi)/2 + delta, discard in the closed 2*delta band between.
// Each probability is an independent convergent sum of Gaussian CDF
// differences over the wrap images of its region.
OutcomeProbabilities outcome_probabilities(NoiseParams noise, double delta);

// (Squeezing level in dB) = -10 log10(std_dev^2 / vacuum variance).
NoiseParams squeezing_db_to_std(double db);
double std_to_squeezing_db(NoiseParams noise);

}  // namespace gkpqpc
