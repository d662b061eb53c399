#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "specdens/abelian_cover.hpp"
#include "specdens/certify.hpp"

namespace specdens {

// Single vertex with one labeled loop per generator: the presentation complex
// of Z^rank on the chosen generators, realized over (Z/NZ)^rank.
AbelianCoverSpec cayley_cover(const std::vector<std::vector<int>>& generators,
                              int n);

// cayley_cover on the standard unit generators of Z^d.
AbelianCoverSpec torus_cover(int d, int n);

// Cover read from a complex file; rank falls back to the argument when the
// file has no labels section (zero labels: n disjoint copies of the base).
AbelianCoverSpec file_cover(const std::filesystem::path& path, int rank,
                            int n);

NamedInstance make_cycle(int n);
NamedInstance make_torus(int d, int n);
NamedInstance make_cayley(const std::vector<std::vector<int>>& generators,
                          int n);
NamedInstance make_complex_file(const std::filesystem::path& path, int rank,
                                int n, int k);
NamedInstance make_matrix_file(const std::filesystem::path& path,
                               const std::string& format);
NamedInstance make_random_psd(int dim, std::uint64_t seed);

}  // namespace specdens
