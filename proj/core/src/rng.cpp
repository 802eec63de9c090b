#include "gkpqpc/rng.hpp"

#include <cmath>

namespace gkpqpc {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t c[4], const std::uint32_t k[2]) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  c[0] = hi1 ^ c[1] ^ k[0];
  c[1] = lo1;
  c[2] = hi0 ^ c[3] ^ k[1];
  c[3] = lo0;
}

// Uniform double in (0,1) from 53 high bits; never returns 0 or 1.
inline double uniform_from_bits(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

constexpr double kTwoPi = 6.2831853071795864769;

}  // namespace

PhiloxBlock philox4x32(const std::uint32_t counter[4], const std::uint32_t key[2]) {
  std::uint32_t c[4] = {counter[0], counter[1], counter[2], counter[3]};
  std::uint32_t k[2] = {key[0], key[1]};
  for (int round = 0; round < 10; ++round) {
    philox_round(c, k);
    k[0] += kPhiloxW0;
    k[1] += kPhiloxW1;
  }
  return PhiloxBlock{{c[0], c[1], c[2], c[3]}};
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t derive_stream_key(std::uint64_t seed, std::initializer_list<std::uint64_t> fields) {
  std::uint64_t state = seed;
  std::uint64_t key = splitmix64(state);
  for (std::uint64_t f : fields) {
    state ^= f;
    key = splitmix64(state);
  }
  return key;
}

std::pair<double, double> gaussian_pair(std::uint64_t key, std::uint64_t index_hi,
                                        std::uint64_t index_lo) {
  const std::uint32_t counter[4] = {
      static_cast<std::uint32_t>(index_lo), static_cast<std::uint32_t>(index_lo >> 32),
      static_cast<std::uint32_t>(index_hi), static_cast<std::uint32_t>(index_hi >> 32)};
  const std::uint32_t k[2] = {static_cast<std::uint32_t>(key),
                              static_cast<std::uint32_t>(key >> 32)};
  const PhiloxBlock b = philox4x32(counter, k);
  const std::uint64_t lane0 = (static_cast<std::uint64_t>(b.w[1]) << 32) | b.w[0];
  const std::uint64_t lane1 = (static_cast<std::uint64_t>(b.w[3]) << 32) | b.w[2];
  const double u1 = uniform_from_bits(lane0);
  const double u2 = uniform_from_bits(lane1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

double RandomStream::next_uniform() {
  const std::uint32_t counter[4] = {static_cast<std::uint32_t>(counter_),
                                    static_cast<std::uint32_t>(counter_ >> 32), 0u, 1u};
  const std::uint32_t k[2] = {static_cast<std::uint32_t>(key_),
                              static_cast<std::uint32_t>(key_ >> 32)};
  ++counter_;
  const PhiloxBlock b = philox4x32(counter, k);
  const std::uint64_t lane = (static_cast<std::uint64_t>(b.w[1]) << 32) | b.w[0];
  return uniform_from_bits(lane);
}

double RandomStream::next_gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  const auto [g0, g1] = gaussian_pair(key_, 0, counter_);
  ++counter_;
  cached_gaussian_ = g1;
  has_cached_gaussian_ = true;
  return g0;
}

}  // namespace gkpqpc
