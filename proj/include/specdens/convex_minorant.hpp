#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "specdens/step_function.hpp"

namespace specdens {

/**
 * Piecewise-linear convex function through (0,0), stored as its breakpoints.
 * Built as the lower convex hull of sample points, it is the canonical
 * minorant used on the Nash-inequality side: 0 <= phi(y) <= target(y) at
 * every sample.
 */
class ConvexMinorant {
 public:
  // samples: (y, value) pairs, y >= 0 distinct, values >= 0 finite.
  // The anchor (0,0) is always included. Needs at least 2 samples.
  static ConvexMinorant lower_hull(
      std::vector<std::pair<double, double>> samples);

  // Evaluation: linear interpolation between breakpoints; beyond the last
  // breakpoint the final slope is extended (keeps convexity). y < 0 throws.
  double operator()(double y) const;

  const std::vector<std::pair<double, double>>& breakpoints() const {
    return pts_;
  }

  // Nondecreasing-slope check, exact on the stored breakpoints.
  bool convex() const;

 private:
  std::vector<std::pair<double, double>> pts_;  // ascending y, starts at (0,0)
};

// Exact canonical minorant of the target y -> y * Finv(y): the hull of the
// per-step left-limit extreme points (c_i, l_i * c_i) of the target, with
// c_i the cumulative masses of F. The hull is <= target everywhere on
// [0, total mass), not only at samples.
ConvexMinorant nash_minorant(const StepFunction& f);

// Target y * Finv(y) (right-continuous inverse); +inf sentinel at and above
// total mass.
double nash_target(const StepFunction& f, double y);

// inf over y in (0, total mass) of phi(y) / (y * Finv(y)), taken over a
// log-spaced grid of grid_size points joined with the exact jump locations
// of the target (where the per-interval infima sit). Zero/invalid
// denominators are skipped.
double minorant_target_ratio_inf(const StepFunction& f,
                                 const ConvexMinorant& phi,
                                 std::size_t grid_size = 1000);

}  // namespace specdens
