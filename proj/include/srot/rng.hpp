#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace srot {

/// Seedable random source with identical streams on every platform.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are not (their algorithms are left to
/// the library vendor), so all derived draws are implemented here:
///   - uniform():  top 53 bits of one engine output, scaled by 2^-53, in [0,1).
///   - index(n):   rejection sampling on the engine output; unbiased in [0,n).
///   - shuffle():  Fisher-Yates from the back, using index().
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::size_t index(std::size_t n);

  void shuffle(std::span<std::size_t> values);

 private:
  std::mt19937_64 engine_;
};

}  // namespace srot
