#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>

namespace specdens {

// Dense eigensolves are refused above this; larger operators must go through
// the character-block path.
inline constexpr int kMaxDenseDim = 4096;

// max_{i,j} |P_ij|; the l1->linf operator norm of a matrix kernel under
// counting measure. For positive semidefinite P the maximum sits on the
// diagonal.
double ultra_norm(const Eigen::MatrixXd& p);

// Normalized trace tr(P)/group_size; the von Neumann trace of an invariant
// kernel on group_size fibers.
double gamma_trace(const Eigen::MatrixXd& p, int group_size);

/**
 * Finite self-adjoint nonnegative operator on a based vector space.
 * Validation: symmetry to 1e-12 relative on construction; positivity is
 * checked against the spectrum when the operator is decomposed.
 *
 * The invariance flag declares that the instance commutes with a transitive
 * abelian action with fiber_dim coordinates per group element; in that case
 * every diagonal entry of any polynomial in the matrix is constant along the
 * group, which validate_invariance() spot-checks.
 */
class OperatorInstance {
 public:
  OperatorInstance(Eigen::MatrixXd a, bool invariant, int fiber_dim = 1,
                   std::string name = "operator");

  int dimension() const { return static_cast<int>(a_.rows()); }
  int fiber_dim() const { return fiber_dim_; }
  int group_size() const { return dimension() / fiber_dim_; }
  bool invariant() const { return invariant_; }
  const std::string& name() const { return name_; }
  const Eigen::MatrixXd& matrix() const { return a_; }
  double max_abs_entry() const { return a_.cwiseAbs().maxCoeff(); }

  // Dirichlet energy <A f, f>; asserts nonnegativity to tolerance.
  double energy(const Eigen::VectorXd& f) const;

  // Checks constancy of the diagonals of A and A^2 when invariant.
  void validate_invariance(double tol = 1e-9) const;

 private:
  Eigen::MatrixXd a_;
  bool invariant_;
  int fiber_dim_;
  std::string name_;
};

// Matrix file input: dense rows, or sparse symmetric triplets "i,j,value"
// (upper triangle suffices; mirrored on load).
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path,
                                const std::string& format);

}  // namespace specdens
