#pragma once

#include <cstdint>
#include <random>

namespace fogopt {

/// Name of the generator recorded in experiment metadata.
inline constexpr const char* kPrngName = "mt19937_64";

/// splitmix64 mixing step; used to derive independent sub-streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Per-trial sub-stream: the trial index offsets a hashed copy of the
/// experiment seed before a second hash. A plain seed-XOR-index scheme
/// would hand adjacent base seeds the same trial-seed set in permuted
/// order, which collapses averaged results onto each other.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(splitmix64(seed) + trial);
}

/// Re-draw sub-stream: folds a re-draw counter into a trial seed.
inline std::uint64_t redraw_seed(std::uint64_t tseed, std::uint64_t counter) {
  return splitmix64(tseed + counter);
}

/// 64-bit seeded generator with portable draw primitives.
///
/// std::uniform_real_distribution and friends are implementation-defined,
/// so reproducibility across standard libraries requires fixed mappings:
/// doubles take the top 53 bits, integers go through floor(u01 * m).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1).
  double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  /// Uniform integer in [0, m). Requires m >= 1.
  std::uint64_t uniform_index(std::uint64_t m) {
    auto k = static_cast<std::uint64_t>(u01() * static_cast<double>(m));
    return k < m ? k : m - 1;
  }

private:
  std::mt19937_64 gen_;
};

}  // namespace fogopt
