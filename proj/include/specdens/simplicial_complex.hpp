#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <vector>

namespace specdens {

/**
 * Finite Delta-complex: cells per degree are ordered vertex tuples, faces are
 * resolved to explicit cell indices, and orientation signs come from tuple
 * position ((-1)^j for deleting vertex j). Loops and repeated tuples are
 * legal cells; what is rejected is a face lookup that matches two distinct
 * cells, since the incidence would be ambiguous.
 *
 * Both constructors verify d_{k+1} d_k = 0 in exact integer arithmetic.
 */
class SimplicialComplex {
 public:
  using Cell = std::vector<int>;

  // cells[k] lists the degree-k cells. Faces are found by vertex-tuple lookup;
  // with auto_complete, missing faces are created (recursively), otherwise
  // they are a validation error.
  static SimplicialComplex from_cells(std::vector<std::vector<Cell>> cells,
                                      bool auto_complete);

  // faces[k][i] gives the k+1 face indices of cell i of degree k (k >= 1),
  // ordered by deleted-vertex position. Used where tuple lookup would be
  // ambiguous, e.g. quotient complexes with multiple parallel cells.
  static SimplicialComplex from_explicit(
      std::vector<std::vector<Cell>> cells,
      std::vector<std::vector<std::vector<int>>> faces);

  int top_degree() const { return static_cast<int>(cells_.size()) - 1; }
  int count(int k) const;
  const Cell& cell(int k, int i) const { return cells_[k][i]; }
  const std::vector<int>& faces(int k, int i) const { return faces_[k][i]; }

  // Dense signed coboundary d_k : functions on k-cells -> functions on
  // (k+1)-cells; entries accumulate, so a loop edge contributes 0.
  Eigen::MatrixXd coboundary(int k) const;

  // |d_k alpha|_2^2 through the incidence lists; no matrix is formed.
  double coboundary_energy(int k, const Eigen::VectorXd& alpha) const;

 private:
  void verify_dd() const;

  std::vector<std::vector<Cell>> cells_;
  std::vector<std::vector<std::vector<int>>> faces_;
};

// Line-oriented complex file: sections "[k=0]", "[k=1]", ... with one
// space-separated vertex tuple per line, plus an optional "[labels]" section
// of lines "edge-index m1 ... md" giving Z^d translation labels on 1-cells
// (unlisted edges get the zero label).
struct ComplexFile {
  std::vector<std::vector<SimplicialComplex::Cell>> cells;
  std::vector<std::vector<int>> labels;  // per 1-cell, width = rank
  int rank = 0;
};

ComplexFile read_complex_file(const std::filesystem::path& path);
void write_complex_file(const std::filesystem::path& path, const ComplexFile& cf);

}  // namespace specdens
