#include "specdens/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "specdens/abelian_cover.hpp"
#include "specdens/certify.hpp"
#include "specdens/csv.hpp"
#include "specdens/instances.hpp"
#include "specdens/orlicz_profile.hpp"
#include "specdens/rn_profile.hpp"

namespace specdens {

namespace {

bool is_cover_kind(const std::string& kind) { return kind != "matrix-file"; }

AbelianCoverSpec cover_for(const InstanceConfig& ic, int n) {
  if (ic.kind == "cycle") return cayley_cover({{1}}, n);
  if (ic.kind == "torus") return torus_cover(ic.rank, n);
  if (ic.kind == "cayley-table") return cayley_cover(ic.labels, n);
  if (ic.kind == "complex-file") return file_cover(ic.path, ic.rank, n);
  throw std::invalid_argument("instance kind \"" + ic.kind +
                              "\" is not a cover");
}

NamedInstance instance_for(const InstanceConfig& ic) {
  if (ic.kind == "matrix-file") return make_matrix_file(ic.path, ic.format);
  if (ic.degree == 0) {
    if (ic.kind == "cycle") return make_cycle(ic.size);
    if (ic.kind == "torus") return make_torus(ic.rank, ic.size);
    if (ic.kind == "cayley-table") return make_cayley(ic.labels, ic.size);
  }
  if (ic.kind == "complex-file")
    return make_complex_file(ic.path, ic.rank, ic.size, ic.degree);
  AbelianCoverSpec spec = cover_for(ic, ic.size);
  return {ic.kind + "[N=" + std::to_string(ic.size) +
              ",k=" + std::to_string(ic.degree) + "]",
          quotient_hodge(spec, ic.degree)};
}

// density + full eigenvalue list by the route the kind dictates
struct SpectrumData {
  std::vector<double> eigenvalues;  // ascending, kernel included
  StepFunction density;
  std::string route;
};

SpectrumData spectrum_for(const RunConfig& cfg) {
  SpectrumData out;
  if (is_cover_kind(cfg.instance.kind)) {
    AbelianCoverSpec spec = cover_for(cfg.instance, cfg.instance.size);
    BlockFamily fam = twisted_blocks(spec, cfg.instance.degree, cfg.jobs);
    for (int b = 0; b < fam.num_blocks(); ++b) {
      const auto& ev = fam.block_eigenvalues(b);
      for (int i = 0; i < ev.size(); ++i) out.eigenvalues.push_back(ev(i));
    }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    out.density = fam.density();
    out.route = "blocks[" + std::to_string(fam.num_blocks()) + "x" +
                std::to_string(fam.block_dim()) + "]";
  } else {
    NamedInstance inst = instance_for(cfg.instance);
    const auto dec = SpectralDecomposition::compute(inst.op);
    out.eigenvalues.assign(dec.eigenvalues().begin(),
                           dec.eigenvalues().end());
    out.density = dec.density_ultra();
    out.route = "ultra";
  }
  return out;
}

void write_column_csv(const std::filesystem::path& path,
                      const std::string& header,
                      const std::vector<std::vector<double>>& rows,
                      std::uint64_t seed) {
  std::ostringstream os;
  os << seed_header(seed) << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << fmt_double(row[i]);
    os << "\n";
  }
  atomic_write_file(path, os.str());
}

std::filesystem::path out_dir(const RunConfig& cfg) {
  std::filesystem::path dir = cfg.out;
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

int cmd_spectrum(const RunConfig& cfg) {
  const auto dir = out_dir(cfg);
  SpectrumData sd = spectrum_for(cfg);
  std::vector<std::vector<double>> rows;
  rows.reserve(sd.eigenvalues.size());
  for (double l : sd.eigenvalues) rows.push_back({l});
  write_column_csv(dir / "eigenvalues.csv", "lambda", rows, cfg.seed);
  write_step_function(dir / "density.csv", sd.density, cfg.seed);
  std::cout << "spectrum: " << sd.eigenvalues.size() << " eigenvalues ("
            << sd.route << "), " << sd.density.size()
            << " density atoms, mass " << fmt_double(sd.density.total_mass())
            << "\n";
  return 0;
}

int cmd_profiles(const RunConfig& cfg) {
  const auto dir = out_dir(cfg);
  SpectrumData sd = spectrum_for(cfg);
  const OrliczProfile profile(sd.density);
  write_step_function(dir / "density.csv", sd.density, cfg.seed);
  write_step_function(dir / "g.csv", profile.g(), cfg.seed);
  std::vector<std::vector<double>> yrows;
  for (double y : cfg.profiles.y_grid)
    yrows.push_back({y, profile.h(y), profile.n(y)});
  write_column_csv(dir / "profiles_y.csv", "y,H,N", yrows, cfg.seed);
  std::vector<std::vector<double>> trows;
  for (double t : cfg.profiles.t_grid) {
    auto [l, m] = profile.heat(t);
    trows.push_back({t, l, m});
  }
  write_column_csv(dir / "profiles_t.csv", "t,L,M", trows, cfg.seed);
  std::cout << "profiles: " << sd.density.size() << " F atoms, G mass "
            << fmt_double(profile.g().total_mass()) << ", grids "
            << cfg.profiles.y_grid.size() << "y/" << cfg.profiles.t_grid.size()
            << "t\n";
  return 0;
}

int cmd_certify(const RunConfig& cfg) {
  const auto dir = out_dir(cfg);
  NamedInstance inst = instance_for(cfg.instance);
  SuiteOptions opt;
  opt.states = cfg.certify.states;
  opt.seed = cfg.seed;
  opt.corrupt_halve = cfg.certify.corrupt;
  opt.jobs = cfg.jobs;
  opt.t_grid = cfg.certify.t_grid;
  opt.ultra_points = cfg.certify.ultra_points;
  opt.sandwich_eps = cfg.certify.sandwich_eps;
  opt.checks = cfg.certify.checks;
  std::vector<NamedInstance> instances;
  instances.push_back(std::move(inst));
  const SuiteResult res = run_suite(instances, opt);
  write_cert_records(dir / "report.csv", res.records, cfg.seed);
  std::size_t failed = 0;
  for (const auto& r : res.records)
    if (!r.advisory && !r.pass) ++failed;
  for (const auto& [name, route] : res.routes)
    std::cout << "certify: " << name << " (F route: " << route << ")\n";
  std::cout << "certify: " << res.records.size() << " records, " << failed
            << " theorem-backed failures";
  if (cfg.certify.corrupt) std::cout << " [corrupted F: negative control]";
  std::cout << "\n";
  for (const auto& r : res.records)
    if (!r.advisory && !r.pass)
      std::cout << "  FAIL " << r.instance << " " << r.state << " " << r.check
                << " param=" << fmt_double(r.param)
                << " margin=" << fmt_double(r.margin) << "\n";
  std::cout << (res.pass ? "certify: PASS" : "certify: FAIL") << "\n";
  return res.pass ? 0 : 1;
}

int cmd_scaling(const RunConfig& cfg) {
  const auto dir = out_dir(cfg);
  if (!is_cover_kind(cfg.instance.kind))
    throw std::invalid_argument("scaling requires a cover instance kind");
  if (cfg.scaling.sizes.empty())
    throw std::invalid_argument("scaling.sizes is empty");
  const int k = cfg.scaling.degree;

  struct Row {
    int n = 0;
    StepFunction density;
    bool fitted = false;
    AsymptoticFit fit;
    std::string fit_note;
    SobolevBracket bracket;
  };
  std::vector<Row> rows;
  for (int n : cfg.scaling.sizes) {
    Row row;
    row.n = n;
    AbelianCoverSpec spec = cover_for(cfg.instance, n);
    row.density = hodge_density(spec, k, cfg.jobs);
    write_step_function(dir / ("density_N" + std::to_string(n) + ".csv"),
                        row.density, cfg.seed);
    if (cfg.scaling.fit_window.size() == 2) {
      // small tower sizes may not resolve the window; skip those, fit the rest
      try {
        row.fit = asymptotic_fit(row.density, cfg.scaling.fit_window[0],
                                 cfg.scaling.fit_window[1],
                                 cfg.scaling.k_candidates);
        row.fitted = true;
      } catch (const std::invalid_argument& e) {
        row.fit_note = e.what();
      }
    }
    row.bracket = sobolev_ratio(spec, k, cfg.scaling.p,
                                cfg.scaling.sample_budget, cfg.seed, cfg.jobs);
    rows.push_back(std::move(row));
  }

  std::ostringstream os;
  os << seed_header(cfg.seed);
  os << "n,atoms,mass,alpha,c,log_k,residual,sobolev_lower,sobolev_upper\n";
  for (const auto& r : rows) {
    os << r.n << "," << r.density.size() << ","
       << fmt_double(r.density.total_mass()) << ",";
    if (r.fitted)
      os << fmt_double(r.fit.alpha) << "," << fmt_double(r.fit.c) << ","
         << r.fit.k << "," << fmt_double(r.fit.residual);
    else
      os << ",,,";
    os << "," << fmt_double(r.bracket.lower) << ","
       << fmt_double(r.bracket.upper) << "\n";
  }
  atomic_write_file(dir / "summary.csv", os.str());

  for (const auto& r : rows) {
    std::cout << "scaling: N=" << r.n << " atoms=" << r.density.size()
              << " mass=" << fmt_double(r.density.total_mass());
    if (r.fitted)
      std::cout << " alpha=" << fmt_double(r.fit.alpha)
                << " (log power k=" << r.fit.k
                << ", residual=" << fmt_double(r.fit.residual) << ")";
    else if (!r.fit_note.empty())
      std::cout << " fit skipped (" << r.fit_note << ")";
    std::cout << " sobolev=[" << fmt_double(r.bracket.lower) << ", "
              << fmt_double(r.bracket.upper) << "]\n";
  }
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double a = rows[i].bracket.upper, b = rows[i + 1].bracket.upper;
    if (a > 0.0 && b > 0.0)
      std::cout << "scaling: upper-bound stability N=" << rows[i].n << "->"
                << rows[i + 1].n << ": "
                << fmt_double(std::max(a / b, b / a)) << "\n";
  }
  return 0;
}

int cmd_continuum(const RunConfig& cfg) {
  const auto dir = out_dir(cfg);
  const auto& cn = cfg.continuum;
  if (cn.n >= 3) {
    const RnProfile rn = rn_profile(cn.n);
    std::ostringstream os;
    os << seed_header(cfg.seed) << "name,value\n";
    os << "n," << cn.n << "\n";
    os << "c_n," << fmt_double(rn.c_n) << "\n";
    os << "sobolev_constant," << fmt_double(rn.sobolev_constant) << "\n";
    os << "aubin_reference," << fmt_double(rn.aubin_reference) << "\n";
    atomic_write_file(dir / "rn.csv", os.str());
    std::cout << "continuum: R^" << cn.n
              << " c_n=" << fmt_double(rn.c_n)
              << " sobolev=" << fmt_double(rn.sobolev_constant)
              << " aubin=" << fmt_double(rn.aubin_reference) << "\n";
  } else {
    std::cout << "continuum: closed-form profile needs n >= 3, skipped\n";
  }

  PolynomialSymbol sym;
  sym.n = cn.n;
  if (cn.symbol.empty()) {
    for (int j = 0; j < cn.n; ++j) {
      PolynomialSymbol::Term t;
      t.powers.assign(cn.n, 0);
      t.powers[j] = 2;
      t.coeff = -1.0;  // a_I (i xi)^I = |xi_j|^2 needs a_I = -1
      sym.terms.push_back(std::move(t));
    }
  } else {
    sym.terms = cn.symbol;
  }
  std::vector<double> grid = cn.grid;
  if (grid.empty()) {
    for (int i = 0; i < 10; ++i)
      grid.push_back(0.5 * std::pow(8.0, i / 9.0));
  }
  const SampledDensity density =
      symbol_density(sym, grid, cn.budget, cfg.seed, cn.box, cfg.jobs);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < density.lambda.size(); ++i)
    rows.push_back({density.lambda[i], density.value[i], density.std_err[i]});
  write_column_csv(dir / "symbol_density.csv", "lambda,F,stderr", rows,
                   cfg.seed);
  std::cout << "continuum: sampled " << density.budget << " points in box [";
  for (std::size_t j = 0; j < density.box_half.size(); ++j)
    std::cout << (j ? "," : "") << fmt_double(density.box_half[j]);
  std::cout << "], boundary hits " << density.boundary_hits << "/"
            << density.accepted_top << "\n";

  if (cn.window.size() == 2) {
    const ExponentReadoff ro =
        exponent_readoff(density, cn.window[0], cn.window[1], cn.k_candidates);
    std::ostringstream os;
    os << seed_header(cfg.seed)
       << "alpha,c,log_k,residual,max_rel_stderr,points\n";
    os << fmt_double(ro.fit.alpha) << "," << fmt_double(ro.fit.c) << ","
       << ro.fit.k << "," << fmt_double(ro.fit.residual) << ","
       << fmt_double(ro.max_rel_stderr) << "," << ro.fit.points << "\n";
    atomic_write_file(dir / "readoff.csv", os.str());
    std::cout << "continuum: alpha=" << fmt_double(ro.fit.alpha)
              << " (log power k=" << ro.fit.k
              << ", max rel stderr=" << fmt_double(ro.max_rel_stderr)
              << ")\n";
  }
  return 0;
}

}  // namespace specdens
