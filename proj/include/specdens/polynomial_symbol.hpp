#pragma once

#include <cstdint>
#include <vector>

#include "specdens/asymptotic_fit.hpp"
#include "specdens/step_function.hpp"

namespace specdens {

/**
 * Polynomial symbol sigma(xi) = sum_I a_I (i xi)^I on R^n. Every multi-index
 * needs even total degree so the value is real; the realized term is
 * a_I (-1)^{|I|/2} xi^I. The constant term must vanish (sigma(0) = 0), and
 * sigma >= 0 is validated on the Monte-Carlo samples.
 */
struct PolynomialSymbol {
  struct Term {
    std::vector<int> powers;  // size n
    double coeff = 0.0;       // a_I

    bool operator==(const Term&) const = default;
  };
  int n = 1;
  std::vector<Term> terms;

  void validate() const;
  double value(const double* xi) const;
};

/**
 * Monte-Carlo estimate of F(lambda) = (2 pi)^{-n} vol({sigma <= lambda})
 * restricted to the sampling box. Values are cumulative over a single sample
 * set (nested sublevel events), hence exactly nondecreasing in lambda, with
 * a binomial standard error per grid point. Sampling is chunked; each chunk
 * draws from a sub-seed derived from (seed, chunk index), so results are
 * byte-identical regardless of the jobs setting.
 */
struct SampledDensity {
  std::vector<double> lambda;   // grid, strictly increasing
  std::vector<double> value;    // F estimate, cumulative
  std::vector<double> std_err;  // binomial standard error of value
  std::vector<double> box_half; // per-axis half-width b_i
  std::uint64_t seed = 0;
  long budget = 0;
  long accepted_top = 0;    // samples with sigma <= lambda_max
  long boundary_hits = 0;   // accepted_top samples in the 1e-3 face shell

  StepFunction to_step() const;  // atoms at grid points with positive increment
};

// box_half empty requests the auto box: per-axis doubling until
// sigma(b e_i) > lambda_max, which fails honestly (with a diagnostic) for
// symbols that are not coercive along some axis. A populated box is trusted
// up to the boundary-hit diagnostic: if more than 0.1% of the samples
// accepted at lambda_max land within a 1e-3 relative shell of a box face,
// the box is reported too small.
SampledDensity symbol_density(const PolynomialSymbol& sigma,
                              std::vector<double> grid, long budget,
                              std::uint64_t seed,
                              std::vector<double> box_half = {}, int jobs = 1);

struct ExponentReadoff {
  AsymptoticFit fit;
  double max_rel_stderr = 0.0;  // worst relative MC error inside the window
};

// Fits C lambda^alpha |ln lambda|^k on the window after checking every grid
// point inside it has relative MC error < 20%; refuses otherwise.
ExponentReadoff exponent_readoff(const SampledDensity& density, double lo,
                                 double hi,
                                 const std::vector<int>& k_candidates);

}  // namespace specdens
