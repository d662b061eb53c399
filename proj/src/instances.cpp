#include "specdens/instances.hpp"

#include <random>
#include <stdexcept>

#include "specdens/rng.hpp"

namespace specdens {

AbelianCoverSpec cayley_cover(const std::vector<std::vector<int>>& generators,
                              int n) {
  if (generators.empty())
    throw std::invalid_argument("at least one generator required");
  const int rank = static_cast<int>(generators[0].size());
  std::vector<std::vector<SimplicialComplex::Cell>> cells(2);
  cells[0] = {{0}};
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != rank)
      throw std::invalid_argument("generator rank mismatch");
    cells[1].push_back({0, 0});
  }
  AbelianCoverSpec spec;
  spec.base = SimplicialComplex::from_cells(std::move(cells), false);
  spec.labels = generators;
  spec.rank = rank;
  spec.quotient_size = n;
  spec.validate();
  return spec;
}

AbelianCoverSpec torus_cover(int d, int n) {
  if (d < 1) throw std::invalid_argument("torus dimension must be >= 1");
  std::vector<std::vector<int>> gens(d, std::vector<int>(d, 0));
  for (int j = 0; j < d; ++j) gens[j][j] = 1;
  return cayley_cover(gens, n);
}

AbelianCoverSpec file_cover(const std::filesystem::path& path, int rank,
                            int n) {
  ComplexFile cf = read_complex_file(path);
  AbelianCoverSpec spec;
  spec.base = SimplicialComplex::from_cells(cf.cells, false);
  if (cf.rank > 0) {
    if (rank > 0 && rank != cf.rank)
      throw std::invalid_argument("configured rank disagrees with the file");
    spec.rank = cf.rank;
    spec.labels = cf.labels;
  } else {
    spec.rank = rank > 0 ? rank : 1;
    spec.labels.assign(spec.base.count(1),
                       std::vector<int>(spec.rank, 0));
  }
  spec.quotient_size = n;
  spec.validate();
  return spec;
}

NamedInstance make_cycle(int n) {
  AbelianCoverSpec spec = cayley_cover({{1}}, n);
  return {"cycle[" + std::to_string(n) + "]", quotient_hodge(spec, 0)};
}

NamedInstance make_torus(int d, int n) {
  AbelianCoverSpec spec = torus_cover(d, n);
  return {"torus[" + std::to_string(d) + "," + std::to_string(n) + "]",
          quotient_hodge(spec, 0)};
}

NamedInstance make_cayley(const std::vector<std::vector<int>>& generators,
                          int n) {
  AbelianCoverSpec spec = cayley_cover(generators, n);
  return {"cayley[" + std::to_string(spec.rank) + "," + std::to_string(n) +
              "]",
          quotient_hodge(spec, 0)};
}

NamedInstance make_complex_file(const std::filesystem::path& path, int rank,
                                int n, int k) {
  AbelianCoverSpec spec = file_cover(path, rank, n);
  return {"complex[" + path.stem().string() + ",k=" + std::to_string(k) +
              ",N=" + std::to_string(n) + "]",
          quotient_hodge(spec, k)};
}

NamedInstance make_matrix_file(const std::filesystem::path& path,
                               const std::string& format) {
  Eigen::MatrixXd a = read_matrix_csv(path, format);
  return {"matrix[" + path.stem().string() + "]",
          OperatorInstance(std::move(a), false, 1,
                           "matrix " + path.stem().string())};
}

NamedInstance make_random_psd(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  auto rng = make_rng(seed, 0xA11CEULL);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd b(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) b(i, j) = nd(rng);
  Eigen::MatrixXd a = b.transpose() * b / static_cast<double>(dim);
  return {"random-psd[" + std::to_string(dim) + "]",
          OperatorInstance(std::move(a), false, 1, "random psd")};
}

}  // namespace specdens
