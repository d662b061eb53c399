#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "specdens/operator_instance.hpp"
#include "specdens/step_function.hpp"

namespace specdens {

// Contiguous run of numerically coincident eigenvalues; columns [begin, end)
// of the eigenvector basis span the eigenspace.
struct SpectralCluster {
  double lambda = 0.0;
  int begin = 0;
  int end = 0;
  int multiplicity() const { return end - begin; }
};

/**
 * Full dense eigendecomposition of an OperatorInstance with the kernel split
 * off. Eigenvalues below kernel_rel_tol * max(1, |A|_max) * dim are classified
 * as kernel; the remainder are grouped into clusters at relative tolerance
 * 1e-9. Construction verifies the reconstruction invariant
 * |V L V^T - A|_max <= 1e-8 * max(1, |A|_max), orthonormality of V to 1e-9,
 * and positivity of the spectrum to -1e-9 * max(1, |A|_max).
 *
 * Spectral functions of a PSD operator attain their largest absolute entry on
 * the diagonal, so ultra norms of nonnegative spectral functions are computed
 * from per-cluster projector diagonals without forming any matrix.
 */
class SpectralDecomposition {
 public:
  static SpectralDecomposition compute(const OperatorInstance& inst,
                                       double kernel_rel_tol = 1e-9);

  int dimension() const { return static_cast<int>(eigenvalues_.size()); }
  int kernel_dim() const { return kernel_dim_; }
  double kernel_threshold() const { return kernel_threshold_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& basis() const { return basis_; }
  const std::vector<SpectralCluster>& clusters() const { return clusters_; }

  double min_positive() const;
  double max_eigenvalue() const { return eigenvalues_(dimension() - 1); }

  // diag of the orthogonal projector onto cluster j's eigenspace.
  const Eigen::VectorXd& cluster_diag(int j) const { return diags_[j]; }

  Eigen::MatrixXd kernel_projector() const;
  Eigen::VectorXd project_off_kernel(const Eigen::VectorXd& f) const;

  // Full matrix sum_{0 < lambda_j <= lambda_cut} f(lambda_j) P_j. Quadratic
  // memory; intended for small instances and tests.
  Eigen::MatrixXd spectral_matrix(const std::function<double(double)>& f,
                                  double lambda_cut) const;

  // Ultra norm of the same operator via the diagonal fast path. Requires
  // f >= 0 on the spectrum (checked); throws otherwise.
  double ultra_spectral(const std::function<double(double)>& f,
                        double lambda_cut) const;

  // F(lambda) from the normalized trace: one atom per cluster with weight
  // multiplicity / group_size.
  StepFunction density_trace(int group_size) const;

  // F(lambda) = ultra_norm(Pi_lambda): running maximum over cumulative
  // projector diagonals. Atoms with zero increment are dropped.
  StepFunction density_ultra() const;

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd basis_;
  std::vector<SpectralCluster> clusters_;
  std::vector<Eigen::VectorXd> diags_;
  int kernel_dim_ = 0;
  double kernel_threshold_ = 0.0;
};

}  // namespace specdens
