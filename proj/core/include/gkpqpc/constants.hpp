#pragma once

namespace gkpqpc {

// GKP square-lattice geometry: codewords repeat every 2*sqrt(pi) in each
// quadrature, logical values alternate every sqrt(pi).
inline constexpr double kSqrtPi = 1.7724538509055160273;
inline constexpr double kHalfSqrtPi = kSqrtPi / 2.0;
inline constexpr double kTwoSqrtPi = 2.0 * kSqrtPi;

// Zero-rate hashing bound of the additive Gaussian noise channel, 1/sqrt(e),
// quoted as an effective per-quadrature shift standard deviation.
inline constexpr double kHashingBoundStd = 0.60653065971263342360;

// Vacuum quadrature variance in hbar = 1 units with [q, p] = i.
inline constexpr double kVacuumVariance = 0.5;

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gkpqpc
