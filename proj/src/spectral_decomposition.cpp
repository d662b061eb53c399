#include "specdens/spectral_decomposition.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace specdens {

SpectralDecomposition SpectralDecomposition::compute(
    const OperatorInstance& inst, double kernel_rel_tol) {
  const int n = inst.dimension();
  if (n > kMaxDenseDim)
    throw std::runtime_error(inst.name() + ": dimension " + std::to_string(n) +
                             " exceeds the dense eigensolver cap " +
                             std::to_string(kMaxDenseDim));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(inst.matrix());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error(inst.name() + ": eigensolver did not converge");

  SpectralDecomposition d;
  d.eigenvalues_ = solver.eigenvalues();
  d.basis_ = solver.eigenvectors();

  const double scale = std::max(1.0, inst.max_abs_entry());

  // Reconstruction and orthonormality invariants.
  const Eigen::MatrixXd recon =
      d.basis_ * d.eigenvalues_.asDiagonal() * d.basis_.transpose();
  const double recon_err = (recon - inst.matrix()).cwiseAbs().maxCoeff();
  if (recon_err > 1e-8 * scale)
    throw std::runtime_error(inst.name() + ": reconstruction defect " +
                             std::to_string(recon_err));
  const double ortho_err =
      (d.basis_.transpose() * d.basis_ - Eigen::MatrixXd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  if (ortho_err > 1e-9)
    throw std::runtime_error(inst.name() + ": basis not orthonormal, defect " +
                             std::to_string(ortho_err));
  if (d.eigenvalues_(0) < -1e-9 * scale)
    throw std::runtime_error(inst.name() + ": operator not PSD, bottom eigenvalue " +
                             std::to_string(d.eigenvalues_(0)));

  d.kernel_threshold_ = kernel_rel_tol * scale * static_cast<double>(n);
  d.kernel_dim_ = 0;
  while (d.kernel_dim_ < n && d.eigenvalues_(d.kernel_dim_) <= d.kernel_threshold_)
    d.kernel_dim_++;

  const double cluster_tol = 1e-9 * scale;
  int i = d.kernel_dim_;
  while (i < n) {
    SpectralCluster c;
    c.begin = i;
    int j = i + 1;
    while (j < n && d.eigenvalues_(j) - d.eigenvalues_(j - 1) <= cluster_tol) j++;
    c.end = j;
    c.lambda = d.eigenvalues_.segment(c.begin, c.end - c.begin).mean();
    d.clusters_.push_back(c);
    i = j;
  }

  d.diags_.reserve(d.clusters_.size());
  for (const auto& c : d.clusters_)
    d.diags_.push_back(d.basis_.middleCols(c.begin, c.multiplicity())
                           .rowwise()
                           .squaredNorm());
  return d;
}

double SpectralDecomposition::min_positive() const {
  if (clusters_.empty())
    throw std::runtime_error("operator has no positive spectrum");
  return clusters_.front().lambda;
}

Eigen::MatrixXd SpectralDecomposition::kernel_projector() const {
  const int n = dimension();
  if (kernel_dim_ == 0) return Eigen::MatrixXd::Zero(n, n);
  const auto k = basis_.leftCols(kernel_dim_);
  return k * k.transpose();
}

Eigen::VectorXd SpectralDecomposition::project_off_kernel(
    const Eigen::VectorXd& f) const {
  if (f.size() != dimension())
    throw std::invalid_argument("project_off_kernel: wrong dimension");
  if (kernel_dim_ == 0) return f;
  const auto k = basis_.leftCols(kernel_dim_);
  return f - k * (k.transpose() * f);
}

Eigen::MatrixXd SpectralDecomposition::spectral_matrix(
    const std::function<double(double)>& f, double lambda_cut) const {
  const int n = dimension();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (size_t j = 0; j < clusters_.size(); ++j) {
    const auto& c = clusters_[j];
    if (c.lambda > lambda_cut) break;
    const auto v = basis_.middleCols(c.begin, c.multiplicity());
    out.noalias() += f(c.lambda) * (v * v.transpose());
  }
  return out;
}

double SpectralDecomposition::ultra_spectral(
    const std::function<double(double)>& f, double lambda_cut) const {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dimension());
  for (size_t j = 0; j < clusters_.size(); ++j) {
    const auto& c = clusters_[j];
    if (c.lambda > lambda_cut) break;
    const double fv = f(c.lambda);
    if (fv < 0.0)
      throw std::invalid_argument(
          "ultra_spectral: f must be nonnegative on the spectrum");
    diag += fv * diags_[j];
  }
  return diag.size() == 0 ? 0.0 : diag.maxCoeff();
}

StepFunction SpectralDecomposition::density_trace(int group_size) const {
  if (group_size <= 0)
    throw std::invalid_argument("density_trace: group_size must be positive");
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(clusters_.size());
  for (const auto& c : clusters_)
    atoms.emplace_back(c.lambda, static_cast<double>(c.multiplicity()) /
                                     static_cast<double>(group_size));
  return StepFunction::from_atoms(atoms);
}

StepFunction SpectralDecomposition::density_ultra() const {
  Eigen::VectorXd cum = Eigen::VectorXd::Zero(dimension());
  double running = 0.0;
  std::vector<std::pair<double, double>> atoms;
  for (size_t j = 0; j < clusters_.size(); ++j) {
    cum += diags_[j];
    const double m = cum.maxCoeff();
    if (m < running)
      throw std::runtime_error("density_ultra: running max decreased");
    if (m > running) atoms.emplace_back(clusters_[j].lambda, m - running);
    running = m;
  }
  return StepFunction::from_atoms(atoms);
}

}  // namespace specdens
