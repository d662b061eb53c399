#include <cmath>
#include <stdexcept>

#include "specdens/convex_minorant.hpp"
#include "specdens/rng.hpp"
#include "vendor/doctest.h"

using namespace specdens;

namespace {

StepFunction c4_density() {
  return StepFunction::from_atoms({{2.0, 0.5}, {4.0, 0.25}});
}

}  // namespace

TEST_CASE("lower hull drops dominated samples and stays convex") {
  ConvexMinorant phi = ConvexMinorant::lower_hull(
      {{1.0, 0.5}, {2.0, 10.0}, {3.0, 3.0}});
  CHECK(phi.convex());
  // (2,10) lies above the segment (1,0.5)-(3,3) so it must not survive
  REQUIRE(phi.breakpoints().size() == 3);
  CHECK(phi.breakpoints()[0] == std::pair{0.0, 0.0});
  CHECK(phi.breakpoints()[1] == std::pair{1.0, 0.5});
  CHECK(phi.breakpoints()[2] == std::pair{3.0, 3.0});
  CHECK(phi(0.5) == 0.25);
  CHECK(phi(2.0) == 1.75);
  // past the last breakpoint the final slope is extended
  CHECK(phi(4.0) == 4.25);
  CHECK_THROWS_AS(phi(-0.1), std::invalid_argument);
}

TEST_CASE("collinear middle samples are dropped from the hull") {
  ConvexMinorant phi = ConvexMinorant::lower_hull(
      {{1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}});
  REQUIRE(phi.breakpoints().size() == 2);
  CHECK(phi.breakpoints()[1] == std::pair{3.0, 3.0});
  CHECK(phi(1.0) == 1.0);
}

TEST_CASE("lower hull validates its samples") {
  using V = std::vector<std::pair<double, double>>;
  CHECK_THROWS_AS(ConvexMinorant::lower_hull(V{}), std::invalid_argument);
  CHECK_THROWS_AS(ConvexMinorant::lower_hull(V{{1.0, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ConvexMinorant::lower_hull(V{{1.0, -0.5}, {2.0, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ConvexMinorant::lower_hull(V{{-1.0, 0.5}, {2.0, 1.0}}),
                  std::invalid_argument);
}

TEST_CASE("4-cycle nash minorant has slopes 2 then 8") {
  StepFunction f = c4_density();
  ConvexMinorant phi = nash_minorant(f);
  CHECK(phi.convex());
  const auto& bp = phi.breakpoints();
  REQUIRE(bp.size() == 3);
  CHECK(bp[0] == std::pair{0.0, 0.0});
  CHECK(bp[1] == std::pair{0.5, 1.0});   // extreme point (c_1, l_1 c_1)
  CHECK(bp[2] == std::pair{0.75, 3.0});  // extreme point (c_2, l_2 c_2)
  CHECK(phi(0.25) == 0.5);
  CHECK(phi(0.5) == 1.0);
  CHECK(phi(0.625) == 2.0);
}

TEST_CASE("nash minorant sits below the target on a dense grid") {
  StepFunction f = StepFunction::from_atoms(
      {{0.3, 0.2}, {1.0, 0.25}, {2.5, 0.3}, {9.0, 0.15}});
  ConvexMinorant phi = nash_minorant(f);
  CHECK(phi.convex());
  const double mass = f.total_mass();
  for (int i = 1; i < 2000; ++i) {
    const double y = mass * static_cast<double>(i) / 2000.0;
    const double target = nash_target(f, y);
    if (is_sentinel(target)) continue;
    CHECK(phi(y) <= target * (1.0 + 1e-12) + 1e-15);
  }
}

TEST_CASE("nash target uses the right-continuous inverse with sentinel") {
  StepFunction f = c4_density();
  CHECK(nash_target(f, 0.25) == 0.5);  // 0.25 * Finv(0.25) = 0.25 * 2
  CHECK(nash_target(f, 0.5) == 2.0);   // jump: Finv(0.5) = 4
  CHECK(is_sentinel(nash_target(f, 0.75)));
  CHECK(is_sentinel(nash_target(f, 1.0)));
}

TEST_CASE("4-cycle minorant-to-target ratio infimum is exactly one half") {
  // the worst ratio sits at the jump y = 0.5: phi = 1, target = 0.5 * 4 = 2
  StepFunction f = c4_density();
  ConvexMinorant phi = nash_minorant(f);
  const double c = minorant_target_ratio_inf(f, phi);
  CHECK(c == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ratio infimum is strictly positive for random spectra") {
  auto rng = make_rng(2026, 4);
  std::uniform_real_distribution<double> loc(0.1, 8.0);
  std::uniform_real_distribution<double> wt(0.05, 0.6);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<std::pair<double, double>> atoms;
    for (int i = 0; i < 5; ++i) atoms.emplace_back(loc(rng), wt(rng));
    StepFunction f = StepFunction::from_atoms(atoms);
    ConvexMinorant phi = nash_minorant(f);
    const double c = minorant_target_ratio_inf(f, phi);
    CHECK(c > 0.0);
    CHECK(c <= 1.0 + 1e-12);
  }
}

TEST_CASE("the zero minorant is admissible and evaluates to zero") {
  ConvexMinorant zero = ConvexMinorant::lower_hull({{1.0, 0.0}, {2.0, 0.0}});
  CHECK(zero.convex());
  CHECK(zero(0.7) == 0.0);
  CHECK(zero(5.0) == 0.0);
}
