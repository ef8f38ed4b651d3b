#pragma once

#include <cstdint>
#include <random>

namespace prepro {

// Seeded RNG with hand-rolled bounded draws. std::mt19937_64's output
// sequence is pinned by the standard, but the distribution adaptors are not;
// drawing through rejection keeps reports byte-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform on [lo, hi] inclusive.
  long uniform(long lo, long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return lo + static_cast<long>(v % span);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace prepro
