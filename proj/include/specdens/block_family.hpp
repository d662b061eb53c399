#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "specdens/step_function.hpp"

namespace specdens {

/**
 * Character decomposition of an invariant operator: one Hermitian block per
 * character theta of the deck group. Eigendecomposes every block on
 * construction and classifies kernel eigenvalues against a single global
 * threshold kernel_rel_tol * max(1, |D|_max over all blocks) * total_dim, so
 * the block route and the dense quotient route agree on what the kernel is.
 */
class BlockFamily {
 public:
  explicit BlockFamily(std::vector<Eigen::MatrixXcd> blocks,
                       std::string name = "block family",
                       double kernel_rel_tol = 1e-9, int jobs = 1);

  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int block_dim() const { return block_dim_; }
  int total_dim() const { return num_blocks() * block_dim_; }
  const std::string& name() const { return name_; }
  double kernel_threshold() const { return kernel_threshold_; }
  int kernel_total() const { return kernel_total_; }

  const Eigen::MatrixXcd& block(int b) const { return blocks_[b]; }
  const Eigen::VectorXd& block_eigenvalues(int b) const { return evals_[b]; }
  const Eigen::MatrixXcd& block_vectors(int b) const { return evecs_[b]; }

  // Positive spectrum over all blocks, counted with weight 1 / num_blocks per
  // eigenvalue. Coincident values cluster at 1e-9 * max(1, lambda_max).
  StepFunction density() const;

  double min_positive() const;
  double max_eigenvalue() const;

  // Per-coordinate mean of pseudo-inverse diagonals:
  // (1 / num_blocks) * sum_theta (D_theta^+)_{sigma sigma}.
  Eigen::VectorXd pseudo_inverse_diag_mean() const;

  // (block, column) index of every kernel eigenvector.
  std::vector<std::pair<int, int>> kernel_vectors() const;

 private:
  std::vector<Eigen::MatrixXcd> blocks_;
  std::vector<Eigen::VectorXd> evals_;
  std::vector<Eigen::MatrixXcd> evecs_;
  std::string name_;
  int block_dim_ = 0;
  double kernel_threshold_ = 0.0;
  int kernel_total_ = 0;
};

}  // namespace specdens
