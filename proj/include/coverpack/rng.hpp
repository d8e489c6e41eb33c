#pragma once

#include <cstdint>

namespace coverpack {

// Deterministic 64-bit generator (xoshiro256**, seeded through splitmix64).
// The stream for a given seed is identical on every platform and toolchain,
// which is why the standard <random> distributions are not used here: their
// output is implementation-defined. Consumers that need several independent
// streams derive them by seed arithmetic; throughout this library the stream
// for run or instance index j is Rng(seed + j).
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  // Next uniform 64-bit word.
  std::uint64_t next();

  // Uniform double in [0,1) with 53-bit resolution.
  double uniform();

  // Uniform double in [a,b).
  double uniform(double a, double b);

  // Uniform integer in [0,bound), unbiased via rejection. bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform integer in {a,...,b}, inclusive. Requires a <= b.
  long long uniform_int(long long a, long long b);

  // True with probability p.
  bool bernoulli(double p);

private:
  std::uint64_t s_[4];
};

}  // namespace coverpack
