#pragma once

#include <cstdint>

// Deterministic, splittable pseudo-random streams.
//
// The generator is SplitMix64 run in counter mode: the state advances by a
// fixed odd constant and the output is the SplitMix64 finalizer of the state.
// Output therefore depends only on (stream key, draw index), which makes
// streams cheap to split and reproducible across platforms (pure 64-bit
// integer arithmetic, no libm). This exact algorithm is part of the
// reproducibility contract: reports compare bit-for-bit across runs.

namespace akt {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 output function (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Hash-combine for deriving sub-stream ids. Order-sensitive.
inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h + kGolden + mix64(v + kGolden));
}

template <typename... Rest>
std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v, Rest... rest) {
  return hash_combine(hash_combine(h, v), rest...);
}

struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;
};

class Rng {
 public:
  Rng() : Rng(Seed{}) {}
  explicit Rng(Seed s) : key_(hash_combine(mix64(s.master + kGolden), s.stream)), state_(key_) {}
  Rng(std::uint64_t master, std::uint64_t stream) : Rng(Seed{master, stream}) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  // Unbiased integer in [0, bound) via Lemire's multiply-reject. bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t cutoff = (0 - bound) % bound;
      while (lo < cutoff) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  std::int64_t next_index(std::int64_t n) {
    return static_cast<std::int64_t>(next_below(static_cast<std::uint64_t>(n)));
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform double in (0, 1); safe under log().
  double next_double_pos() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Child stream keyed by this stream's identity plus ids. Does not depend on
  // how far the parent has been advanced, so derivation is order-free.
  template <typename... Ids>
  Rng split(Ids... ids) const {
    Rng child;
    child.key_ = hash_combine(key_, static_cast<std::uint64_t>(ids)...);
    child.state_ = child.key_;
    return child;
  }

 private:
  std::uint64_t key_;
  std::uint64_t state_;
};

}  // namespace akt
