#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <utility>

namespace gkpqpc {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
// every 128-bit output block is addressed by a (key, counter) pair, so any
// draw in a simulation can be regenerated independently of execution order.
struct PhiloxBlock {
  std::uint32_t w[4];
};

PhiloxBlock philox4x32(const std::uint32_t counter[4], const std::uint32_t key[2]);

// SplitMix64 single step; used to derive stream keys from a master seed.
std::uint64_t splitmix64(std::uint64_t& state);

// Folds an ordered list of fields into a stream key. Distinct field lists
// give statistically independent Philox keys for the same master seed.
std::uint64_t derive_stream_key(std::uint64_t seed, std::initializer_list<std::uint64_t> fields);

// Two independent standard-normal draws from one Philox block addressed by
// (key, index_hi, index_lo). Box-Muller on the block's two 64-bit lanes.
std::pair<double, double> gaussian_pair(std::uint64_t key, std::uint64_t index_hi,
                                        std::uint64_t index_lo);

// Sequential view over a counter-based stream. Copy-cheap; two streams with
// distinct keys never share draws.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : key_(key) {}

  double next_uniform();   // in (0, 1)
  double next_gaussian();  // standard normal

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace gkpqpc
