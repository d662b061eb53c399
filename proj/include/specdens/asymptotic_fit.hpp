#pragma once

#include <vector>

#include "specdens/step_function.hpp"

namespace specdens {

/**
 * Least-squares read-off of low-lambda decay exponents:
 *
 *   log F(l) ~ log c + alpha * log l + k * log|log l|
 *
 * fitted at the atoms of F inside a window, with the log-power order k
 * searched over a small integer candidate set (the residual decides).
 */
struct AsymptoticFit {
  double alpha = 0.0;
  double c = 0.0;
  int k = 0;
  double residual = 0.0;  // RMS of log residuals for the winning k
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t points = 0;
};

// Requires >= 8 atoms inside [lo, hi]; when a nonzero k is among the
// candidates the window must stay inside (0,1) so |log l| is bounded away
// from 0. Throws std::invalid_argument otherwise.
AsymptoticFit asymptotic_fit(const StepFunction& f, double lo, double hi,
                             const std::vector<int>& k_candidates = {0, 1, 2});

}  // namespace specdens
