#pragma once

namespace specdens {

/**
 * Closed-form R^n Laplacian profiles, n >= 3:
 *   F(lambda) = C_n lambda^{n/2},           C_n = (2 pi)^{-n} vol(B^n)
 *   G(lambda) = (n C_n / (n-2)) lambda^{n/2 - 1}
 *   H(x)      = ((n-2) / (n C_n))^{2/(n-2)} x^{n/(n-2)}
 * together with the Sobolev constant (1/pi)(n vol(B^n)/(n-2))^{1/n} and the
 * Aubin best-constant reference 2 (n(n-2))^{-1/2} area(S^n)^{-1/n}.
 * Constructed profiles satisfy H(x) = x * G^{-1}(x) identically; rn_profile
 * asserts sobolev_constant >= aubin_reference.
 */
struct RnProfile {
  int n = 3;
  double c_n = 0.0;
  double sobolev_constant = 0.0;
  double aubin_reference = 0.0;

  double f(double lambda) const;
  double g(double lambda) const;
  double g_inverse(double x) const;
  double h(double x) const;
};

RnProfile rn_profile(int n);

double unit_ball_volume(int n);    // vol(B^n) = pi^{n/2} / Gamma(n/2 + 1)
double unit_sphere_area(int n);    // area(S^n) = 2 pi^{(n+1)/2} / Gamma((n+1)/2)

}  // namespace specdens
