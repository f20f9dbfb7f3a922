#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ikep {

/// Deterministic 64-bit generator (splitmix64).  Used instead of the std
/// engines and distributions so that a seed produces the same stream on
/// every platform and toolchain.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n); unbiased via rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t limit = ~0ull - ~0ull % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent stream seed; used to give each sampled run or
/// generated instance its own deterministic stream.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  DetRng r(base ^ (stream * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
  return r.next();
}

}  // namespace ikep
