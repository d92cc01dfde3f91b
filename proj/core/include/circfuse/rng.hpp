#pragma once

#include <cstdint>

namespace circfuse {

/// SplitMix64 finaliser (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent stream key from a master seed and an index
/// (e.g. a sweep row or a sensor number).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64((index + 1) * 0x9e3779b97f4a7c15ULL));
}

/// Counter-based generator: draw i is mix64(key + (i + 1) * golden_gamma),
/// i.e. the SplitMix64 sequence. Any draw is addressable by its counter, and
/// split() yields statistically independent child streams. Output is
/// identical on every platform.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t seed) : key_(seed) {}

  constexpr std::uint64_t next_u64() {
    counter_ += 1;
    return mix64(key_ + counter_ * kGamma);
  }
  constexpr std::uint64_t operator()() { return next_u64(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on the open interval (0, 1).
  double uniform_open();
  /// Standard normal (Marsaglia polar method).
  double normal();

  [[nodiscard]] CounterRng split(std::uint64_t stream) const {
    return CounterRng(derive_seed(key_, stream));
  }

  [[nodiscard]] constexpr std::uint64_t counter() const { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace circfuse
