#include "specdens/block_family.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specdens/parallel.hpp"

namespace specdens {

BlockFamily::BlockFamily(std::vector<Eigen::MatrixXcd> blocks, std::string name,
                         double kernel_rel_tol, int jobs)
    : blocks_(std::move(blocks)), name_(std::move(name)) {
  if (blocks_.empty())
    throw std::invalid_argument(name_ + ": empty block family");
  block_dim_ = static_cast<int>(blocks_[0].rows());
  if (block_dim_ == 0) throw std::invalid_argument(name_ + ": empty blocks");

  double scale = 0.0;
  for (const auto& b : blocks_) {
    if (b.rows() != block_dim_ || b.cols() != block_dim_)
      throw std::invalid_argument(name_ + ": blocks differ in dimension");
    scale = std::max(scale, b.cwiseAbs().maxCoeff());
  }
  scale = std::max(1.0, scale);
  for (const auto& b : blocks_) {
    const double herm = (b - b.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12 * scale)
      throw std::invalid_argument(name_ + ": block not Hermitian (defect " +
                                  std::to_string(herm) + ")");
  }

  kernel_threshold_ = kernel_rel_tol * scale * static_cast<double>(total_dim());
  evals_.resize(blocks_.size());
  evecs_.resize(blocks_.size());
  // Blocks are independent work items; results land in preassigned slots so
  // the decomposition is order-independent.
  parallel_for(jobs, blocks_.size(), [&](size_t b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(blocks_[b]);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error(name_ + ": block eigensolver did not converge");
    evals_[b] = solver.eigenvalues();
    evecs_[b] = solver.eigenvectors();
  });
  for (const auto& ev : evals_)
    if (ev(0) < -1e-9 * scale)
      throw std::runtime_error(name_ + ": block not PSD, bottom eigenvalue " +
                               std::to_string(ev(0)));
  kernel_total_ = 0;
  for (const auto& ev : evals_)
    for (int j = 0; j < ev.size(); ++j)
      if (ev(j) <= kernel_threshold_) kernel_total_++;
}

StepFunction BlockFamily::density() const {
  std::vector<double> positive;
  positive.reserve(static_cast<size_t>(total_dim()));
  for (const auto& ev : evals_)
    for (int j = 0; j < ev.size(); ++j)
      if (ev(j) > kernel_threshold_) positive.push_back(ev(j));
  if (positive.empty())
    throw std::runtime_error(name_ + ": no positive spectrum");
  std::sort(positive.begin(), positive.end());
  const double tol = 1e-9 * std::max(1.0, positive.back());
  return StepFunction::from_sorted_values(positive, tol,
                                          1.0 / static_cast<double>(num_blocks()));
}

double BlockFamily::min_positive() const {
  double best = kPlusInf;
  for (const auto& ev : evals_)
    for (int j = 0; j < ev.size(); ++j)
      if (ev(j) > kernel_threshold_) best = std::min(best, ev(j));
  if (is_sentinel(best))
    throw std::runtime_error(name_ + ": no positive spectrum");
  return best;
}

double BlockFamily::max_eigenvalue() const {
  double best = 0.0;
  for (const auto& ev : evals_) best = std::max(best, ev(ev.size() - 1));
  return best;
}

Eigen::VectorXd BlockFamily::pseudo_inverse_diag_mean() const {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(block_dim_);
  for (size_t b = 0; b < blocks_.size(); ++b) {
    const auto& ev = evals_[b];
    const auto& vec = evecs_[b];
    for (int j = 0; j < ev.size(); ++j) {
      if (ev(j) <= kernel_threshold_) continue;
      acc += vec.col(j).cwiseAbs2() / ev(j);
    }
  }
  return acc / static_cast<double>(num_blocks());
}

std::vector<std::pair<int, int>> BlockFamily::kernel_vectors() const {
  std::vector<std::pair<int, int>> out;
  for (size_t b = 0; b < blocks_.size(); ++b)
    for (int j = 0; j < evals_[b].size(); ++j)
      if (evals_[b](j) <= kernel_threshold_)
        out.emplace_back(static_cast<int>(b), j);
  return out;
}

}  // namespace specdens
