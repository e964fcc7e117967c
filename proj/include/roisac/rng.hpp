#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace roisac {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view s);

// Per-trial seed fan-out: hash of (root seed, command tag, trial index).
// Every stochastic stage derives its stream this way so results are
// reproducible across runs and machines for a fixed root seed.
std::uint64_t derive_seed(std::uint64_t root, std::string_view tag, std::uint64_t index);

// Deterministic random stream. Gaussian draws use an explicit Box-Muller
// transform instead of std::normal_distribution, whose output is
// implementation-defined and would break cross-platform reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive bounds.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  double gaussian();

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::vector<std::uint8_t> random_bits(Rng& rng, std::size_t n);

} // namespace roisac
