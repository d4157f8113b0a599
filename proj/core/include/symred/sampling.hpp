#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "symred/types.hpp"

namespace symred {

// mt19937_64 with a platform-independent mapping to doubles, so seeded runs
// reproduce bit for bit regardless of the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }

  // Uniform integer in [lo, hi].
  int integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

  VecX uniform_vector(int size, double lo, double hi) {
    VecX v(size);
    for (int i = 0; i < size; ++i) v[i] = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

// Derives an independent stream seed from a campaign seed and a stream index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct DomainBox;

std::vector<Vec3> sample_positions(std::uint64_t seed, int count, const DomainBox& box);

}  // namespace symred
