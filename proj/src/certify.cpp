#include "specdens/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "specdens/csv.hpp"
#include "specdens/parallel.hpp"
#include "specdens/rng.hpp"

namespace specdens {

namespace {

std::vector<int> support_of(const Eigen::VectorXd& v) {
  std::vector<int> idx;
  const double thr = 1e-12 * v.cwiseAbs().maxCoeff();
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > thr) idx.push_back(i);
  return idx;
}

CertRecord bound_record(std::string check, double param, double lhs,
                        double rhs, bool lower_bound = false) {
  CertRecord r;
  r.check = std::move(check);
  r.param = param;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lower_bound ? lhs - rhs : rhs - lhs;
  const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
  r.pass = r.margin >= -1e-9 * scale;
  return r;
}

}  // namespace

TestState make_state(const OperatorInstance& op,
                     const SpectralDecomposition& dec,
                     const Eigen::VectorXd& raw, std::string id) {
  if (raw.size() != op.dimension())
    throw std::invalid_argument("state dimension mismatch");
  TestState st;
  st.id = std::move(id);
  st.dim = op.dimension();
  st.f = dec.project_off_kernel(raw);
  const double nrm = st.f.norm();
  if (!(nrm > 1e-12 * std::max(1.0, raw.norm())))
    throw std::invalid_argument("state " + st.id +
                                " projects to zero off the kernel");
  st.energy = op.energy(st.f);
  if (!(st.energy > 0.0))
    throw std::logic_error("off-kernel state has nonpositive energy");
  st.l1 = st.f.lpNorm<1>();
  st.l2sq = st.f.squaredNorm();
  st.support = support_of(st.f);
  Eigen::VectorXd af = op.matrix() * st.f;
  std::vector<int> sa = support_of(af);
  st.omega = st.support;
  st.omega.insert(st.omega.end(), sa.begin(), sa.end());
  std::sort(st.omega.begin(), st.omega.end());
  st.omega.erase(std::unique(st.omega.begin(), st.omega.end()),
                 st.omega.end());
  return st;
}

CertRecord check_h_sobolev(const TestState& s, const OrliczProfile& profile) {
  double lhs = 0.0, y_max = 0.0;
  for (int i = 0; i < s.f.size(); ++i) {
    if (s.f(i) == 0.0) continue;
    const double y = s.f(i) * s.f(i) / (4.0 * s.energy);
    const double v = profile.h(y);
    if (is_sentinel(v))
      throw std::logic_error(
          "H sentinel reached for an admissible state (invariant violation)");
    lhs += v;
    y_max = std::max(y_max, y);
  }
  CertRecord r = bound_record("h_sobolev", y_max, lhs, 1.0);
  r.state = s.id;
  return r;
}

CertRecord check_n_sobolev(const TestState& s, const OrliczProfile& profile) {
  const double m0 = profile.m_hat(0.0);
  double lhs = 0.0, y_max = 0.0;
  for (int i = 0; i < s.f.size(); ++i) {
    if (s.f(i) == 0.0) continue;
    const double y = s.f(i) * s.f(i) / (4.0 * s.energy);
    if (!(y < m0))
      throw std::logic_error(
          "N admissibility |f|^2/4E < Mhat(0) violated (invariant violation)");
    const double v = profile.n(y);
    if (is_sentinel(v))
      throw std::logic_error(
          "N sentinel reached for an admissible state (invariant violation)");
    lhs += v;
    y_max = std::max(y_max, y);
  }
  CertRecord r = bound_record("n_sobolev", y_max, lhs, std::log(2.0));
  r.state = s.id;
  return r;
}

std::pair<CertRecord, CertRecord> check_nash(const TestState& s,
                                             const StepFunction& f,
                                             const ConvexMinorant& phi) {
  if (!phi.convex()) throw std::invalid_argument("minorant is not convex");
  for (const auto& [y, v] : phi.breakpoints()) {
    if (y <= 0.0) continue;
    const double target = nash_target(f, y);
    if (is_sentinel(target)) continue;
    if (v > target + 1e-9 * std::max(1.0, target))
      throw std::invalid_argument("minorant exceeds y*Finv(y) at y=" +
                                  std::to_string(y));
  }

  double lhs_a = 0.0, u_max = 0.0;
  for (int i = 0; i < s.f.size(); ++i) {
    const double a = std::abs(s.f(i));
    if (a == 0.0) continue;
    const double u = a / (2.0 * s.l1);
    const double lam = f.right_inverse(u);
    if (is_sentinel(lam)) {
      lhs_a = kPlusInf;
      u_max = std::max(u_max, u);
      break;
    }
    lhs_a += a * a * lam;
    u_max = std::max(u_max, u);
  }
  CertRecord a = bound_record("nash_a", u_max, lhs_a, 4.0 * s.energy);
  a.state = s.id;

  const double y = s.l2sq / (2.0 * s.l1 * s.l1);
  CertRecord b =
      bound_record("nash_b", y, s.l1 * s.l1 * phi(y), 2.0 * s.energy);
  b.state = s.id;
  return {a, b};
}

CertRecord check_faber_krahn(const TestState& s, const ConvexMinorant& phi) {
  const double mu = static_cast<double>(s.omega.size());
  if (s.omega.size() == static_cast<std::size_t>(s.dim)) {
    // full support: the finite-measure hypothesis is vacuous at this scale
    CertRecord r;
    r.check = "faber_krahn_vacuous";
    r.param = mu;
    r.pass = true;
    r.advisory = true;
    r.state = s.id;
    return r;
  }
  CertRecord r = bound_record("faber_krahn", mu, mu * phi(1.0 / (2.0 * mu)),
                              2.0 * s.energy / s.l2sq);
  r.state = s.id;
  return r;
}

CertRecord check_uncertainty(const TestState& s, const StepFunction& f,
                             double c) {
  if (!(c > 0.0))
    throw std::invalid_argument(
        "uncertainty check refused: minorant quality constant is zero");
  const double lam = s.energy / s.l2sq;
  const double mu = static_cast<double>(s.omega.size());
  CertRecord r = bound_record("uncertainty", lam,
                              2.0 * mu * f.value(4.0 * lam / c), 1.0,
                              /*lower_bound=*/true);
  r.state = s.id;
  return r;
}

namespace {

Eigen::VectorXd generate_raw(const OperatorInstance& op,
                             const SpectralDecomposition& dec,
                             std::mt19937_64& rng, std::size_t s) {
  const int dim = op.dimension();
  const int kind = static_cast<int>(s % 3);
  Eigen::VectorXd raw(dim);
  if (kind == 1 && dim >= 2) {
    std::uniform_int_distribution<int> ud(0, dim - 1);
    int x = ud(rng), y = ud(rng);
    while (y == x) y = ud(rng);
    raw.setZero();
    raw(x) = 1.0;
    raw(y) = -1.0;
    return raw;
  }
  if (kind == 2) {
    const int positive = dim - dec.kernel_dim();
    const int col =
        dec.kernel_dim() + static_cast<int>((s / 3) % std::max(1, positive));
    return dec.basis().col(col);
  }
  std::normal_distribution<double> nd;
  for (int i = 0; i < dim; ++i) raw(i) = nd(rng);
  return raw;
}

void append_check_rows(std::vector<CertRecord>& out, const std::string& inst,
                       const std::vector<CheckRow>& rows) {
  for (const auto& c : rows) {
    CertRecord r;
    r.instance = inst;
    r.state = "-";
    r.check = c.check;
    r.param = c.param;
    r.lhs = c.lhs;
    r.rhs = c.rhs;
    r.margin = c.margin;
    r.pass = c.pass;
    r.advisory = c.advisory;
    out.push_back(r);
  }
}

}  // namespace

SuiteResult run_suite(const std::vector<NamedInstance>& instances,
                      const SuiteOptions& opt) {
  if (opt.states < 0) throw std::invalid_argument("negative state count");
  if (opt.ultra_points < 1)
    throw std::invalid_argument("ultra grid needs at least one point");
  SuiteResult res;
  for (std::size_t ii = 0; ii < instances.size(); ++ii) {
    const auto& inst = instances[ii];
    const auto dec = SpectralDecomposition::compute(inst.op);
    StepFunction fdens = inst.op.invariant()
                             ? dec.density_trace(inst.op.group_size())
                             : dec.density_ultra();
    res.routes.emplace_back(
        inst.name, inst.op.invariant()
                       ? "trace[group=" + std::to_string(inst.op.group_size()) +
                             "]"
                       : "ultra");
    if (fdens.empty()) continue;  // no positive spectrum: nothing to certify
    if (opt.states == 0) continue;  // zero states requested: empty report
    if (opt.corrupt_halve) fdens = fdens.scaled_weights(0.5);

    const OrliczProfile profile(fdens);
    const ConvexMinorant phi = nash_minorant(fdens);
    const double cc = minorant_target_ratio_inf(fdens, phi);

    std::vector<CertRecord> inst_rows;
    const double lmin = dec.min_positive();
    const double lmax = dec.max_eigenvalue();
    for (int i = 0; i < opt.ultra_points; ++i) {
      const double frac = opt.ultra_points == 1
                              ? 1.0
                              : static_cast<double>(i) /
                                    (opt.ultra_points - 1);
      const double lam = lmin * std::pow(lmax / lmin, frac);
      const double measured =
          dec.ultra_spectral([](double u) { return 1.0 / u; }, lam);
      inst_rows.push_back(
          bound_record("ultra_g", lam, measured, profile.g().value(lam)));
    }
    std::vector<double> measured_l, measured_m;
    for (double t : opt.t_grid) {
      measured_l.push_back(dec.ultra_spectral(
          [t](double u) { return std::exp(-t * u); }, lmax));
      measured_m.push_back(dec.ultra_spectral(
          [t](double u) { return std::exp(-t * u) / u; }, lmax));
      inst_rows.push_back(bound_record("ultra_m", t, measured_m.back(),
                                       profile.m_hat(t)));
    }

    const auto sw = growth_sandwich(fdens, opt.sandwich_eps,
                                    fdens.first_location(),
                                    fdens.last_location());
    append_check_rows(inst_rows, inst.name, sw.rows);

    LaplaceOptions lopt;
    lopt.t_grid = opt.t_grid;
    lopt.fiber_dim = inst.op.fiber_dim();
    lopt.invariant = inst.op.invariant();
    lopt.measured_l = measured_l;
    lopt.measured_m = measured_m;
    const auto lap = laplace_comparison(profile, lopt);
    append_check_rows(inst_rows, inst.name, lap.rows);

    for (auto& r : inst_rows) {
      r.instance = inst.name;
      if (r.state.empty()) r.state = "-";
    }
    std::stable_sort(inst_rows.begin(), inst_rows.end(),
                     [](const CertRecord& a, const CertRecord& b) {
                       return a.check < b.check;
                     });
    res.records.insert(res.records.end(), inst_rows.begin(), inst_rows.end());

    const auto enabled = [&](const char* family) {
      if (opt.checks.empty()) return true;
      return std::find(opt.checks.begin(), opt.checks.end(), family) !=
             opt.checks.end();
    };
    std::vector<std::vector<CertRecord>> per_state(opt.states);
    parallel_for(opt.jobs, static_cast<std::size_t>(opt.states),
                 [&](std::size_t s) {
                   auto rng = make_rng(opt.seed, ii * 0x100000ULL + s);
                   char buf[16];
                   std::snprintf(buf, sizeof(buf), "s%03zu", s);
                   const TestState st =
                       make_state(inst.op, dec, generate_raw(inst.op, dec, rng, s),
                                  buf);
                   std::vector<CertRecord> rows;
                   if (enabled("faber_krahn"))
                     rows.push_back(check_faber_krahn(st, phi));
                   if (enabled("h_sobolev"))
                     rows.push_back(check_h_sobolev(st, profile));
                   if (enabled("n_sobolev"))
                     rows.push_back(check_n_sobolev(st, profile));
                   if (enabled("nash")) {
                     auto [a, b] = check_nash(st, fdens, phi);
                     rows.push_back(a);
                     rows.push_back(b);
                   }
                   if (enabled("uncertainty"))
                     rows.push_back(check_uncertainty(st, fdens, cc));
                   for (auto& r : rows) r.instance = inst.name;
                   per_state[s] = std::move(rows);
                 });
    for (auto& rows : per_state)
      res.records.insert(res.records.end(), rows.begin(), rows.end());
  }
  for (const auto& r : res.records)
    if (!r.advisory) res.pass &= r.pass;
  return res;
}

void write_cert_records(const std::filesystem::path& path,
                        const std::vector<CertRecord>& records,
                        std::uint64_t seed) {
  std::ostringstream os;
  os << seed_header(seed);
  os << "instance,state,check,param,lhs,rhs,margin,pass,seed\n";
  for (const auto& r : records)
    os << r.instance << "," << r.state << "," << r.check << ","
       << fmt_double(r.param) << "," << fmt_double(r.lhs) << ","
       << fmt_double(r.rhs) << "," << fmt_double(r.margin) << ","
       << (r.pass ? "1" : "0") << "," << seed << "\n";
  atomic_write_file(path, os.str());
}

}  // namespace specdens
