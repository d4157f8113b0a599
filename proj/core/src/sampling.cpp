#include "symred/sampling.hpp"

#include "symred/gauge_field.hpp"

namespace symred {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finaliser over the combined word.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<Vec3> sample_positions(std::uint64_t seed, int count, const DomainBox& box) {
  Rng rng(seed);
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Vec3 q;
    for (int k = 0; k < 3; ++k) q[k] = rng.uniform(box.lower[k], box.upper[k]);
    out.push_back(q);
  }
  return out;
}

}  // namespace symred
