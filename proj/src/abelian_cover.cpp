#include "specdens/abelian_cover.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "specdens/parallel.hpp"
#include "specdens/rng.hpp"

namespace specdens {
namespace {

int mod_n(long x, int n) {
  const long r = x % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

// flat(a) = sum_j mod(a_j) N^j
int flat_index(const std::vector<int>& a, int n) {
  int g = 0;
  for (size_t j = a.size(); j-- > 0;) g = g * n + mod_n(a[j], n);
  return g;
}

std::vector<int> unflat_index(int g, int n, int d) {
  std::vector<int> a(d);
  for (int j = 0; j < d; ++j) {
    a[j] = g % n;
    g /= n;
  }
  return a;
}

// 1-cell index of the edge (v0, v1) of a degree-k cell: delete the last
// vertex until degree 1.
int edge01_index(const SimplicialComplex& base, int k, int i) {
  while (k >= 2) {
    i = base.faces(k, i)[k];
    --k;
  }
  return i;
}

// Per-cell vertex 0-cell indices and Z^d offsets of the lift based at 0:
// vertex v_i of the lift sits at group element offs[i].
struct CoverTables {
  std::vector<std::vector<std::vector<int>>> vidx;               // [k][cell][pos]
  std::vector<std::vector<std::vector<std::vector<int>>>> offs;  // [k][cell][pos] -> Z^d
};

CoverTables build_tables(const AbelianCoverSpec& spec) {
  const auto& K = spec.base;
  const int top = K.top_degree();
  const std::vector<int> zero(spec.rank, 0);
  CoverTables t;
  t.vidx.resize(top + 1);
  t.offs.resize(top + 1);
  t.vidx[0].resize(K.count(0));
  t.offs[0].resize(K.count(0));
  for (int i = 0; i < K.count(0); ++i) {
    t.vidx[0][i] = {i};
    t.offs[0][i] = {zero};
  }
  for (int k = 1; k <= top; ++k) {
    t.vidx[k].resize(K.count(k));
    t.offs[k].resize(K.count(k));
    for (int i = 0; i < K.count(k); ++i) {
      const auto& f = K.faces(k, i);
      const auto& m01 = spec.labels[edge01_index(K, k, i)];
      auto& vi = t.vidx[k][i];
      auto& oi = t.offs[k][i];
      vi.resize(k + 1);
      oi.assign(k + 1, zero);
      vi[0] = t.vidx[k - 1][f[1]][0];
      for (int j = 1; j <= k; ++j) {
        vi[j] = t.vidx[k - 1][f[0]][j - 1];
        for (int c = 0; c < spec.rank; ++c)
          oi[j][c] = m01[c] + t.offs[k - 1][f[0]][j - 1][c];
      }
    }
  }
  return t;
}

std::complex<double> character_phase(const std::vector<int>& m,
                                     const std::vector<int>& theta, int n) {
  long dot = 0;
  for (size_t j = 0; j < m.size(); ++j) dot += static_cast<long>(m[j]) * theta[j];
  return std::polar(1.0, 2.0 * std::numbers::pi * mod_n(dot, n) / n);
}

}  // namespace

void AbelianCoverSpec::validate() const {
  if (rank < 1) throw std::invalid_argument("cover rank must be >= 1");
  if (quotient_size < 2) throw std::invalid_argument("quotient size must be >= 2");
  if (static_cast<int>(labels.size()) != base.count(1))
    throw std::invalid_argument("need one label per 1-cell (" +
                                std::to_string(base.count(1)) + ", got " +
                                std::to_string(labels.size()) + ")");
  for (const auto& m : labels)
    if (static_cast<int>(m.size()) != rank)
      throw std::invalid_argument("label width must equal the cover rank");
  group_order();  // size guard
  // Cocycle condition mod N on every 2-cell: m(v0,v1) + m(v1,v2) = m(v0,v2).
  for (int t = 0; t < base.count(2); ++t) {
    const auto& f = base.faces(2, t);
    for (int c = 0; c < rank; ++c) {
      const long defect = static_cast<long>(labels[f[2]][c]) +
                          labels[f[0]][c] - labels[f[1]][c];
      if (mod_n(defect, quotient_size) != 0)
        throw std::invalid_argument(
            "labels are not a consistent cocycle at 2-cell " +
            std::to_string(t));
    }
  }
}

int AbelianCoverSpec::group_order() const {
  long g = 1;
  for (int j = 0; j < rank; ++j) {
    g *= quotient_size;
    if (g > (1L << 21))
      throw std::invalid_argument("quotient group too large (N^d > 2^21)");
  }
  return static_cast<int>(g);
}

SimplicialComplex quotient_complex(const AbelianCoverSpec& spec) {
  spec.validate();
  const auto& K = spec.base;
  const int n = spec.quotient_size;
  const int g_ord = spec.group_order();
  const int top = K.top_degree();
  long total = 0;
  for (int k = 0; k <= top; ++k) total += static_cast<long>(g_ord) * K.count(k);
  if (total > 4'000'000)
    throw std::invalid_argument("quotient complex too large to assemble");

  const CoverTables tab = build_tables(spec);
  std::vector<std::vector<SimplicialComplex::Cell>> cells(top + 1);
  std::vector<std::vector<std::vector<int>>> faces(top + 1);
  const int c0 = K.count(0);
  for (int k = 0; k <= top; ++k) {
    const int ck = K.count(k);
    const int ckm = k >= 1 ? K.count(k - 1) : 0;
    cells[k].reserve(static_cast<size_t>(g_ord) * ck);
    if (k >= 1) faces[k].reserve(static_cast<size_t>(g_ord) * ck);
    for (int g = 0; g < g_ord; ++g) {
      const std::vector<int> a = unflat_index(g, n, spec.rank);
      std::vector<int> shifted(spec.rank);
      for (int i = 0; i < ck; ++i) {
        SimplicialComplex::Cell tuple(k + 1);
        for (int v = 0; v <= k; ++v) {
          for (int c = 0; c < spec.rank; ++c)
            shifted[c] = a[c] + tab.offs[k][i][v][c];
          tuple[v] = flat_index(shifted, n) * c0 + tab.vidx[k][i][v];
        }
        cells[k].push_back(std::move(tuple));
        if (k >= 1) {
          const auto& bf = K.faces(k, i);
          const auto& m01 = spec.labels[edge01_index(K, k, i)];
          std::vector<int> f(k + 1);
          for (int c = 0; c < spec.rank; ++c) shifted[c] = a[c] + m01[c];
          f[0] = flat_index(shifted, n) * ckm + bf[0];
          for (int j = 1; j <= k; ++j) f[j] = g * ckm + bf[j];
          faces[k].push_back(std::move(f));
        }
      }
    }
  }
  try {
    return SimplicialComplex::from_explicit(std::move(cells), std::move(faces));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(
        std::string("labels are not a consistent cocycle on the quotient: ") +
        e.what());
  }
}

Eigen::MatrixXcd twisted_coboundary(const AbelianCoverSpec& spec, int k,
                                    const std::vector<int>& theta) {
  const auto& K = spec.base;
  if (k < 0 || static_cast<int>(theta.size()) != spec.rank)
    throw std::invalid_argument("twisted_coboundary: bad degree or character");
  const int rows = K.count(k + 1);
  const int cols = K.count(k);
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const auto& f = K.faces(k + 1, i);
    const auto& m01 = spec.labels[edge01_index(K, k + 1, i)];
    for (size_t j = 0; j < f.size(); ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      if (j == 0)
        d(i, f[j]) += sign * character_phase(m01, theta, spec.quotient_size);
      else
        d(i, f[j]) += sign;
    }
  }
  return d;
}

BlockFamily twisted_blocks(const AbelianCoverSpec& spec, int k, int jobs) {
  spec.validate();
  if (k < 0 || spec.base.count(k) == 0)
    throw std::invalid_argument("twisted_blocks: no cells in degree " +
                                std::to_string(k));
  const int g_ord = spec.group_order();
  std::vector<Eigen::MatrixXcd> blocks(g_ord);
  parallel_for(jobs, static_cast<size_t>(g_ord), [&](size_t g) {
    const auto theta =
        unflat_index(static_cast<int>(g), spec.quotient_size, spec.rank);
    const Eigen::MatrixXcd d = twisted_coboundary(spec, k, theta);
    blocks[g] = d.adjoint() * d;
  });
  return BlockFamily(std::move(blocks),
                     "twisted Hodge blocks k=" + std::to_string(k), 1e-9, jobs);
}

StepFunction hodge_density(const AbelianCoverSpec& spec, int k, int jobs) {
  return twisted_blocks(spec, k, jobs).density();
}

OperatorInstance quotient_hodge(const AbelianCoverSpec& spec, int k) {
  const SimplicialComplex q = quotient_complex(spec);
  if (spec.base.count(k) == 0)
    throw std::invalid_argument("quotient_hodge: no cells in degree " +
                                std::to_string(k));
  const Eigen::MatrixXd d = q.coboundary(k);
  Eigen::MatrixXd a;
  if (d.rows() == 0)
    a = Eigen::MatrixXd::Zero(q.count(k), q.count(k));
  else
    a = d.transpose() * d;
  return OperatorInstance(std::move(a), true, spec.base.count(k),
                          "quotient Hodge k=" + std::to_string(k));
}

double twisted_dd_defect(const AbelianCoverSpec& spec, int k) {
  spec.validate();
  double worst = 0.0;
  for (int g = 0; g < spec.group_order(); ++g) {
    const auto theta = unflat_index(g, spec.quotient_size, spec.rank);
    const Eigen::MatrixXcd d1 = twisted_coboundary(spec, k + 1, theta);
    const Eigen::MatrixXcd d0 = twisted_coboundary(spec, k, theta);
    if (d1.rows() == 0 || d0.rows() == 0) continue;
    worst = std::max(worst, (d1 * d0).cwiseAbs().maxCoeff());
  }
  return worst;
}

SobolevBracket sobolev_ratio(const AbelianCoverSpec& spec, int k, double p,
                             int budget, std::uint64_t seed, int jobs) {
  if (!(p >= 2.0))
    throw std::invalid_argument("sobolev_ratio: p must be >= 2");
  if (budget < 0) throw std::invalid_argument("sobolev_ratio: negative budget");
  const BlockFamily fam = twisted_blocks(spec, k, jobs);
  const SimplicialComplex q = quotient_complex(spec);
  const int g_ord = spec.group_order();
  const int nk = spec.base.count(k);
  const int dim = g_ord * nk;
  const int n = spec.quotient_size;

  const double lam_min = fam.min_positive();
  const Eigen::VectorXd pidiag = fam.pseudo_inverse_diag_mean();
  int sigma_star = 0;
  const double t2inf = std::sqrt(pidiag.maxCoeff(&sigma_star));
  const double upper =
      std::pow(1.0 / std::sqrt(lam_min), 2.0 / p) * std::pow(t2inf, 1.0 - 2.0 / p);

  std::vector<std::vector<int>> thetas(g_ord);
  for (int g = 0; g < g_ord; ++g) thetas[g] = unflat_index(g, n, spec.rank);
  std::vector<std::vector<int>> as = thetas;  // group elements, same enumeration

  const auto norm_p = [&](const Eigen::VectorXd& v) {
    if (is_sentinel(p)) return v.cwiseAbs().maxCoeff();
    if (p == 2.0) return v.norm();
    double s = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      s += std::pow(std::abs(v(i)), p);
    return std::pow(s, 1.0 / p);
  };

  SobolevBracket out;
  out.upper = upper;
  const double emax = std::max(1.0, fam.max_eigenvalue());
  const auto consider = [&](const Eigen::VectorXd& alpha) {
    const double e = q.coboundary_energy(k, alpha);
    if (e <= 1e-20 * alpha.squaredNorm() * emax) return;
    out.lower = std::max(out.lower, norm_p(alpha) / std::sqrt(e));
    out.samples++;
  };

  // Lifted bottom eigenvector: exact equality with the upper bound at p = 2.
  {
    int bb = 0, bj = 0;
    double best = kPlusInf;
    for (int b = 0; b < fam.num_blocks(); ++b) {
      const auto& ev = fam.block_eigenvalues(b);
      for (int j = 0; j < ev.size(); ++j)
        if (ev(j) > fam.kernel_threshold() && ev(j) < best) {
          best = ev(j);
          bb = b;
          bj = j;
        }
    }
    Eigen::VectorXcd lift(dim);
    const auto& w = fam.block_vectors(bb).col(bj);
    for (int g = 0; g < g_ord; ++g) {
      const auto ph = character_phase(as[g], thetas[bb], n);
      for (int s = 0; s < nk; ++s) lift(g * nk + s) = w(s) * ph;
    }
    Eigen::VectorXd re = lift.real();
    if (re.norm() > 1e-12 * std::sqrt(static_cast<double>(dim)))
      consider(re);
    else
      consider(lift.imag());
  }

  // Pseudo-inverse column at the coordinate with the largest diagonal: exact
  // equality with the upper bound at p = inf.
  {
    Eigen::VectorXcd alpha = Eigen::VectorXcd::Zero(dim);
    for (int b = 0; b < fam.num_blocks(); ++b) {
      const auto& ev = fam.block_eigenvalues(b);
      const auto& vec = fam.block_vectors(b);
      Eigen::VectorXcd col = Eigen::VectorXcd::Zero(nk);
      for (int j = 0; j < ev.size(); ++j) {
        if (ev(j) <= fam.kernel_threshold()) continue;
        col += vec.col(j) * (std::conj(vec(sigma_star, j)) / ev(j));
      }
      for (int g = 0; g < g_ord; ++g) {
        const auto ph = character_phase(as[g], thetas[b], n);
        for (int s = 0; s < nk; ++s) alpha(g * nk + s) += ph * col(s);
      }
    }
    consider(alpha.real() / static_cast<double>(g_ord));
  }

  // Kernel-projected Gaussian samples.
  const auto kers = fam.kernel_vectors();
  auto rng = make_rng(seed, 0x50B07EFULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double sqg = std::sqrt(static_cast<double>(g_ord));
  for (int s = 0; s < budget; ++s) {
    Eigen::VectorXd f(dim);
    for (int i = 0; i < dim; ++i) f(i) = gauss(rng);
    Eigen::VectorXcd proj = Eigen::VectorXcd::Zero(dim);
    for (const auto& [b, j] : kers) {
      const auto& w = fam.block_vectors(b).col(j);
      std::complex<double> coef = 0.0;
      for (int g = 0; g < g_ord; ++g) {
        const auto ph = std::conj(character_phase(as[g], thetas[b], n));
        for (int t = 0; t < nk; ++t)
          coef += std::conj(w(t)) * ph * f(g * nk + t);
      }
      coef /= sqg;
      for (int g = 0; g < g_ord; ++g) {
        const auto ph = character_phase(as[g], thetas[b], n);
        for (int t = 0; t < nk; ++t)
          proj(g * nk + t) += coef * w(t) * ph / sqg;
      }
    }
    consider(f - proj.real());
  }
  return out;
}

}  // namespace specdens
