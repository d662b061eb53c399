#include "specdens/operator_instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "specdens/csv.hpp"

namespace specdens {

double ultra_norm(const Eigen::MatrixXd& p) {
  return p.cwiseAbs().maxCoeff();
}

double gamma_trace(const Eigen::MatrixXd& p, int group_size) {
  if (group_size <= 0) throw std::invalid_argument("group_size must be positive");
  return p.trace() / static_cast<double>(group_size);
}

OperatorInstance::OperatorInstance(Eigen::MatrixXd a, bool invariant,
                                   int fiber_dim, std::string name)
    : a_(std::move(a)),
      invariant_(invariant),
      fiber_dim_(fiber_dim),
      name_(std::move(name)) {
  if (a_.rows() == 0 || a_.rows() != a_.cols())
    throw std::invalid_argument(name_ + ": matrix must be square and nonempty");
  if (fiber_dim_ <= 0 || a_.rows() % fiber_dim_ != 0)
    throw std::invalid_argument(name_ + ": fiber_dim must divide the dimension");
  const double scale = std::max(1.0, a_.cwiseAbs().maxCoeff());
  const double asym = (a_ - a_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale)
    throw std::invalid_argument(name_ + ": matrix is not symmetric (defect " +
                                std::to_string(asym) + ")");
  // Symmetrize exactly so downstream eigensolves see a clean input.
  a_ = ((a_ + a_.transpose()) * 0.5).eval();
}

double OperatorInstance::energy(const Eigen::VectorXd& f) const {
  if (f.size() != a_.rows())
    throw std::invalid_argument(name_ + ": energy argument has wrong dimension");
  const double e = f.dot(a_ * f);
  const double scale = std::max(1.0, a_.cwiseAbs().maxCoeff() * f.squaredNorm());
  if (e < -1e-9 * scale)
    throw std::runtime_error(name_ + ": negative Dirichlet energy " +
                             std::to_string(e));
  return std::max(e, 0.0);
}

void OperatorInstance::validate_invariance(double tol) const {
  if (!invariant_) return;
  const Eigen::MatrixXd a2 = a_ * a_;
  const double scale1 = std::max(1.0, a_.cwiseAbs().maxCoeff());
  const double scale2 = std::max(1.0, a2.cwiseAbs().maxCoeff());
  const int n = dimension();
  // Diagonal entry at (g, c) must agree with the entry at (0, c) for every
  // group element g and fiber coordinate c.
  for (int i = 0; i < n; ++i) {
    const int c = i % fiber_dim_;
    if (std::abs(a_(i, i) - a_(c, c)) > tol * scale1)
      throw std::runtime_error(name_ + ": diagonal of A not group-constant");
    if (std::abs(a2(i, i) - a2(c, c)) > tol * scale2)
      throw std::runtime_error(name_ + ": diagonal of A^2 not group-constant");
  }
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path,
                                const std::string& format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv_line(line);
    std::vector<double> row;
    row.reserve(fields.size());
    bool numeric = true;
    for (const auto& f : fields) {
      try {
        row.push_back(parse_double(f));
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) continue;  // header line
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("empty matrix file: " + path.string());

  if (format == "dense") {
    const size_t n = rows.size();
    for (const auto& r : rows)
      if (r.size() != n)
        throw std::runtime_error("dense matrix file is not square: " +
                                 path.string());
    Eigen::MatrixXd a(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) a(i, j) = rows[i][j];
    return a;
  }
  if (format == "triplets") {
    int n = 0;
    for (const auto& r : rows) {
      if (r.size() != 3)
        throw std::runtime_error("triplet rows must be i,j,value: " +
                                 path.string());
      n = std::max({n, static_cast<int>(r[0]) + 1, static_cast<int>(r[1]) + 1});
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& r : rows) {
      const int i = static_cast<int>(r[0]);
      const int j = static_cast<int>(r[1]);
      if (i < 0 || j < 0) throw std::runtime_error("negative triplet index");
      a(i, j) = r[2];
      a(j, i) = r[2];
    }
    return a;
  }
  throw std::invalid_argument("unknown matrix format: " + format);
}

}  // namespace specdens
