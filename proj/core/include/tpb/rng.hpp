#pragma once

#include <cstdint>
#include <random>

namespace tpb {

__extension__ using uint128 = unsigned __int128;

/// Odd multiplier used to derive per-trial seeds. Multiplication by an odd
/// constant is a bijection mod 2^64, so distinct trial indices never collide.
inline constexpr std::uint64_t kTrialSeedMultiplier = 0x9E3779B97F4A7C15ULL;

/// sub_seed = base_seed XOR (trial_index * kTrialSeedMultiplier)
constexpr std::uint64_t derive_subseed(std::uint64_t base_seed, std::uint64_t trial_index) {
  return base_seed ^ (trial_index * kTrialSeedMultiplier);
}

/// Single-owner pseudo-random source for one trial. Backed by the 64-bit
/// Mersenne Twister (period 2^19937 - 1); every public draw consumes exactly
/// one engine output so replay is bit-exact for a given query sequence.
class RewardStream {
 public:
  explicit RewardStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

  std::uint64_t next_u64() {
    ++draws_;
    return engine_();
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform index in [0, n) by multiply-shift.
  std::uint64_t index(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<uint128>(next_u64()) * n) >> 64);
  }

  /// Standard normal via Box-Muller; consumes two draws, caches nothing.
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
  std::mt19937_64 engine_;
};

}  // namespace tpb
