#pragma once

#include <cstdint>
#include <random>

namespace specdens {

// splitmix64 step; used to derive independent sub-stream seeds from a master
// seed so that chunked or parallel sampling is reproducible regardless of
// worker count.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b << 1);
}

inline std::mt19937_64 make_rng(std::uint64_t master, std::uint64_t stream) {
  return std::mt19937_64(derive_seed(master, stream));
}

}  // namespace specdens
