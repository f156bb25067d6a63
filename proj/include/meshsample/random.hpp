#pragma once

#include <concepts>
#include <cstdint>
#include <random>

namespace meshsample {

// Anything callable that yields uniform deviates on [0, 1).
template <class S>
concept DeviateSource = requires(S& source) {
  { source() } -> std::convertible_to<double>;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream seed for (base, stream) pairs, e.g. per grid cell or
// per sampling block.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(splitmix64(base) ^ (stream * 0xd1b54a32d192ed03ULL + 1));
}

// Seedable 64-bit Mersenne Twister producing doubles on [0, 1) from the top
// 53 bits. Never returns 1.0.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// Forwards to another source and counts the deviates drawn.
template <DeviateSource S>
class CountingSource {
 public:
  explicit CountingSource(S& inner) : inner_(&inner) {}

  double operator()() {
    ++count_;
    return (*inner_)();
  }

  std::uint64_t count() const noexcept { return count_; }

 private:
  S* inner_;
  std::uint64_t count_ = 0;
};

}  // namespace meshsample
