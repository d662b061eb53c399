#include "specdens/polynomial_symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "specdens/parallel.hpp"
#include "specdens/rng.hpp"

namespace specdens {

void PolynomialSymbol::validate() const {
  if (n < 1) throw std::invalid_argument("symbol dimension must be >= 1");
  if (n > 6) throw std::invalid_argument("MC volumes are limited to n <= 6");
  if (terms.empty()) throw std::invalid_argument("symbol has no terms");
  for (const auto& t : terms) {
    if (static_cast<int>(t.powers.size()) != n)
      throw std::invalid_argument("multi-index width must equal the dimension");
    long deg = 0;
    for (int p : t.powers) {
      if (p < 0) throw std::invalid_argument("negative power in multi-index");
      deg += p;
    }
    if (deg == 0)
      throw std::invalid_argument("constant term present: sigma(0) != 0");
    if (deg % 2 != 0)
      throw std::invalid_argument(
          "odd multi-index degree: (i xi)^I is not real");
    if (!std::isfinite(t.coeff))
      throw std::invalid_argument("non-finite coefficient");
  }
}

double PolynomialSymbol::value(const double* xi) const {
  double s = 0.0;
  for (const auto& t : terms) {
    double prod = 1.0;
    int deg = 0;
    for (int j = 0; j < n; ++j) {
      deg += t.powers[j];
      for (int q = 0; q < t.powers[j]; ++q) prod *= xi[j];
    }
    // (i xi)^I = i^{|I|} xi^I with |I| even.
    s += t.coeff * ((deg / 2) % 2 == 0 ? 1.0 : -1.0) * prod;
  }
  return s;
}

StepFunction SampledDensity::to_step() const {
  std::vector<std::pair<double, double>> atoms;
  double prev = 0.0;
  for (size_t j = 0; j < lambda.size(); ++j) {
    const double w = value[j] - prev;
    if (w > 0.0) atoms.emplace_back(lambda[j], w);
    prev = value[j];
  }
  return StepFunction::from_atoms(atoms);
}

SampledDensity symbol_density(const PolynomialSymbol& sigma,
                              std::vector<double> grid, long budget,
                              std::uint64_t seed, std::vector<double> box_half,
                              int jobs) {
  sigma.validate();
  if (grid.empty()) throw std::invalid_argument("empty lambda grid");
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || !std::isfinite(grid[i]))
      throw std::invalid_argument("lambda grid must be nonnegative and finite");
    if (i > 0 && grid[i] <= grid[i - 1])
      throw std::invalid_argument("lambda grid must be strictly increasing");
  }
  const double lam_max = grid.back();
  if (!(lam_max > 0.0)) throw std::invalid_argument("lambda grid is all zero");
  if (budget < 10'000)
    throw std::invalid_argument("sample budget must be at least 10^4");

  if (box_half.empty()) {
    // Auto box: double until the symbol clears lambda_max along every axis.
    double b = 1.0;
    std::vector<double> probe(sigma.n, 0.0);
    for (int iter = 0;; ++iter) {
      bool clear = true;
      for (int j = 0; j < sigma.n && clear; ++j) {
        std::fill(probe.begin(), probe.end(), 0.0);
        probe[j] = b;
        if (!(sigma.value(probe.data()) > lam_max * (1.0 + 1e-9))) clear = false;
      }
      if (clear) break;
      if (iter >= 40)
        throw std::runtime_error(
            "auto box failed: symbol does not exceed lambda_max along an axis "
            "(non-coercive symbol?); supply an explicit box");
      b *= 2.0;
    }
    box_half.assign(sigma.n, b);
  }
  if (static_cast<int>(box_half.size()) != sigma.n)
    throw std::invalid_argument("box width list must match the dimension");
  for (double b : box_half)
    if (!(b > 0.0) || !std::isfinite(b))
      throw std::invalid_argument("box half-widths must be positive");

  const long chunk = 1L << 16;
  const long num_chunks = (budget + chunk - 1) / chunk;
  const size_t m = grid.size();
  std::vector<std::vector<long>> buckets(num_chunks);
  std::vector<long> top(num_chunks, 0), bhits(num_chunks, 0);
  const double neg_tol = 1e-12 * (1.0 + lam_max);

  parallel_for(jobs, static_cast<size_t>(num_chunks), [&](size_t c) {
    auto rng = make_rng(seed, c);
    std::vector<std::uniform_real_distribution<double>> dists;
    dists.reserve(sigma.n);
    for (int j = 0; j < sigma.n; ++j)
      dists.emplace_back(-box_half[j], box_half[j]);
    std::vector<long> local(m + 1, 0);
    std::vector<double> xi(sigma.n);
    const long count =
        std::min(chunk, budget - static_cast<long>(c) * chunk);
    for (long s = 0; s < count; ++s) {
      for (int j = 0; j < sigma.n; ++j) xi[j] = dists[j](rng);
      const double v = sigma.value(xi.data());
      if (v < -neg_tol)
        throw std::runtime_error("symbol is negative at a sample point");
      if (v <= 0.0)
        throw std::runtime_error(
            "symbol vanishes at a sample point (degenerate symbol?)");
      const size_t idx =
          std::lower_bound(grid.begin(), grid.end(), v) - grid.begin();
      local[idx]++;
      if (idx < m) {
        top[c]++;
        for (int j = 0; j < sigma.n; ++j)
          if (std::abs(xi[j]) >= box_half[j] * (1.0 - 1e-3)) {
            bhits[c]++;
            break;
          }
      }
    }
    buckets[c] = std::move(local);
  });

  std::vector<long> cum(m, 0);
  long acc = 0;
  SampledDensity out;
  out.accepted_top = 0;
  out.boundary_hits = 0;
  for (long c = 0; c < num_chunks; ++c) {
    out.accepted_top += top[c];
    out.boundary_hits += bhits[c];
  }
  // bucket[j] counts sigma in (grid[j-1], grid[j]]; cumulative sums give the
  // nested sublevel counts.
  for (size_t j = 0; j < m; ++j) {
    for (long c = 0; c < num_chunks; ++c) acc += buckets[c][j];
    cum[j] = acc;
  }
  if (out.accepted_top > 0 &&
      out.boundary_hits * 1000 > out.accepted_top)
    throw std::runtime_error(
        "sampling box too small: " + std::to_string(out.boundary_hits) +
        " of " + std::to_string(out.accepted_top) +
        " accepted samples touch the box boundary");

  double vol_box = 1.0;
  for (double b : box_half) vol_box *= 2.0 * b;
  const double factor =
      vol_box * std::pow(2.0 * std::numbers::pi, -sigma.n);
  out.lambda = std::move(grid);
  out.value.resize(m);
  out.std_err.resize(m);
  const double bd = static_cast<double>(budget);
  for (size_t j = 0; j < m; ++j) {
    const double p = static_cast<double>(cum[j]) / bd;
    out.value[j] = p * factor;
    out.std_err[j] = std::sqrt(p * (1.0 - p) / bd) * factor;
  }
  out.box_half = std::move(box_half);
  out.seed = seed;
  out.budget = budget;
  return out;
}

ExponentReadoff exponent_readoff(const SampledDensity& density, double lo,
                                 double hi,
                                 const std::vector<int>& k_candidates) {
  if (!(lo > 0.0) || !(hi > lo))
    throw std::invalid_argument("exponent window must satisfy 0 < lo < hi");
  if (density.lambda.empty() || lo < density.lambda.front() ||
      hi > density.lambda.back())
    throw std::invalid_argument("exponent window must lie in the sampled range");
  ExponentReadoff out;
  for (size_t j = 0; j < density.lambda.size(); ++j) {
    const double l = density.lambda[j];
    if (l < lo || l > hi) continue;
    if (!(density.value[j] > 0.0))
      throw std::runtime_error("window too noisy: zero density at lambda=" +
                               std::to_string(l));
    const double rel = density.std_err[j] / density.value[j];
    if (rel >= 0.2)
      throw std::runtime_error(
          "window too noisy: relative MC error " + std::to_string(rel) +
          " at lambda=" + std::to_string(l));
    out.max_rel_stderr = std::max(out.max_rel_stderr, rel);
  }
  out.fit = asymptotic_fit(density.to_step(), lo, hi, k_candidates);
  return out;
}

}  // namespace specdens
