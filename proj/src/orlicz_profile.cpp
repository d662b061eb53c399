#include "specdens/orlicz_profile.hpp"

#include <cmath>
#include <stdexcept>

namespace specdens {

OrliczProfile::OrliczProfile(StepFunction f, double tol)
    : f_(std::move(f)), g_(f_.reciprocal_transform()), tol_(tol) {
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw std::invalid_argument("evaluation tolerance must be positive");
}

double OrliczProfile::h(double y) const {
  if (!(y >= 0.0)) throw std::invalid_argument("h requires y >= 0");
  if (y == 0.0) return 0.0;  // short-circuit: 0 * inf is not a value we want
  if (f_.size() == 0) return 0.0;  // empty spectrum: all profiles vanish
  double ginv = g_.right_inverse(y);
  if (is_sentinel(ginv)) return kPlusInf;
  return y * ginv;
}

std::pair<double, double> OrliczProfile::heat(double t) const {
  return {f_.laplace(t), g_.laplace(t)};
}

double OrliczProfile::m_inverse(double y) const {
  if (!(y >= 0.0)) throw std::invalid_argument("m_inverse requires y >= 0");
  double m0 = g_.total_mass();  // Mhat(0)
  if (y >= m0) return 0.0;
  if (y == 0.0) return kPlusInf;
  // bracket: Mhat(lo) > y >= Mhat(hi)
  double lo = 0.0, hi = 1.0;
  int guard = 0;
  while (g_.laplace(hi) > y) {
    hi *= 2.0;
    if (++guard > 4000) throw std::runtime_error("m_inverse bracket failed");
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (g_.laplace(mid) > y)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= tol_ * hi) break;
  }
  return 0.5 * (lo + hi);
}

double OrliczProfile::n(double y) const {
  if (!(y > 0.0)) throw std::invalid_argument("n requires y > 0");
  if (f_.size() == 0) return 0.0;  // empty spectrum: all profiles vanish
  double t = m_inverse(y);
  if (t == 0.0) return kPlusInf;  // y at or above Mhat(0)
  if (is_sentinel(t)) return 0.0;
  return y / t;
}

}  // namespace specdens
