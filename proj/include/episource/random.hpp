#pragma once

#include <cstdint>
#include <limits>

namespace episource {

/// SplitMix64 (Steele, Lea & Flood, 2014). Satisfies
/// UniformRandomBitGenerator; `split` derives an independent stream.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  SplitMix64 split() { return SplitMix64((*this)()); }

 private:
  std::uint64_t state_;
};

/// Seed for stream `index` of a run seeded with `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  SplitMix64 mix(base ^ (index * 0xd1b54a32d192ed03ULL));
  mix();
  return mix();
}

}  // namespace episource
