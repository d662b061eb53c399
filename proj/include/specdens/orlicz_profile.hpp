#pragma once

#include "specdens/step_function.hpp"

namespace specdens {

/**
 * Orlicz-type profiles derived from a spectral decay step function F:
 *
 *   G      = reciprocal transform of F (atoms w_i/l_i at l_i)
 *   H(y)   = y * Ginv(y),   Ginv the right-continuous inverse of G
 *   Lhat(t)= Laplace transform of the F atoms, sum w_i exp(-l_i t)
 *   Mhat(t)= Laplace transform of the G atoms
 *   N(y)   = y / Minv(y),   Minv(y) = inf{ t : Mhat(t) <= y }
 *
 * H and N return the +inf sentinel above the relevant total mass; H(0) = 0.
 */
class OrliczProfile {
 public:
  explicit OrliczProfile(StepFunction f, double tol = 1e-13);

  const StepFunction& density() const { return f_; }
  const StepFunction& g() const { return g_; }

  double h(double y) const;

  double l_hat(double t) const { return f_.laplace(t); }
  double m_hat(double t) const { return g_.laplace(t); }
  // (Lhat, Mhat) at a common t
  std::pair<double, double> heat(double t) const;

  // inf{ t >= 0 : Mhat(t) <= y }; +inf for y <= 0 lower than every value,
  // 0 for y >= Mhat(0). Mhat is continuous and strictly decreasing, so the
  // infimum is located by bracketed bisection to relative tolerance tol.
  double m_inverse(double y) const;

  double n(double y) const;

 private:
  StepFunction f_;
  StepFunction g_;
  double tol_;
};

}  // namespace specdens
