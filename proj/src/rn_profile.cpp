#include "specdens/rn_profile.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace specdens {

double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

double unit_sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, (n + 1) / 2.0) /
         std::tgamma((n + 1) / 2.0);
}

double RnProfile::f(double lambda) const { return c_n * std::pow(lambda, n / 2.0); }

double RnProfile::g(double lambda) const {
  return n * c_n / (n - 2.0) * std::pow(lambda, n / 2.0 - 1.0);
}

double RnProfile::g_inverse(double x) const {
  return std::pow((n - 2.0) * x / (n * c_n), 2.0 / (n - 2.0));
}

double RnProfile::h(double x) const {
  return std::pow((n - 2.0) / (n * c_n), 2.0 / (n - 2.0)) *
         std::pow(x, n / (n - 2.0));
}

RnProfile rn_profile(int n) {
  if (n < 3)
    throw std::invalid_argument("rn_profile requires n >= 3 (G diverges below)");
  RnProfile p;
  p.n = n;
  const double vb = unit_ball_volume(n);
  p.c_n = std::pow(2.0 * std::numbers::pi, -n) * vb;
  p.sobolev_constant =
      std::pow(n * vb / (n - 2.0), 1.0 / n) / std::numbers::pi;
  p.aubin_reference = 2.0 / std::sqrt(n * (n - 2.0)) /
                      std::pow(unit_sphere_area(n), 1.0 / n);
  if (!(p.sobolev_constant >= p.aubin_reference))
    throw std::runtime_error("rn_profile: constant fell below the Aubin reference at n=" +
                             std::to_string(n));
  return p;
}

}  // namespace specdens
