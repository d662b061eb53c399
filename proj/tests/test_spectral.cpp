#include <cmath>
#include <numbers>
#include <stdexcept>

#include "specdens/instances.hpp"
#include "specdens/rng.hpp"
#include "specdens/spectral_decomposition.hpp"
#include "vendor/doctest.h"

using namespace specdens;

namespace {

Eigen::MatrixXd c4_matrix() {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    a(i, i) = 2.0;
    a(i, (i + 1) % 4) = -1.0;
    a(i, (i + 3) % 4) = -1.0;
  }
  return a;
}

}  // namespace

TEST_CASE("operator instance validates symmetry and divisibility") {
  Eigen::MatrixXd a = c4_matrix();
  CHECK_NOTHROW(OperatorInstance(a, true, 1, "c4"));
  Eigen::MatrixXd bad = a;
  bad(0, 1) += 1e-6;
  CHECK_THROWS_AS(OperatorInstance(bad, false), std::invalid_argument);
  CHECK_THROWS_AS(OperatorInstance(a, true, 3), std::invalid_argument);
  CHECK_THROWS_AS(OperatorInstance(a, true, 0), std::invalid_argument);
}

TEST_CASE("4-cycle laplacian from the cover pipeline is the exact circulant") {
  NamedInstance cyc = make_cycle(4);
  CHECK(cyc.name == "cycle[4]");
  const OperatorInstance& inst = cyc.op;
  CHECK(inst.dimension() == 4);
  CHECK(inst.invariant());
  CHECK(inst.fiber_dim() == 1);
  CHECK((inst.matrix() - c4_matrix()).cwiseAbs().maxCoeff() == 0.0);
  CHECK_NOTHROW(inst.validate_invariance());
}

TEST_CASE("4-cycle eigenstructure: kernel, clusters, exact atoms") {
  SpectralDecomposition dec = SpectralDecomposition::compute(make_cycle(4).op);
  CHECK(dec.dimension() == 4);
  CHECK(dec.kernel_dim() == 1);
  REQUIRE(dec.clusters().size() == 2);
  CHECK(dec.clusters()[0].lambda == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(dec.clusters()[0].multiplicity() == 2);
  CHECK(dec.clusters()[1].lambda == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(dec.clusters()[1].multiplicity() == 1);
  CHECK(dec.min_positive() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(dec.max_eigenvalue() == doctest::Approx(4.0).epsilon(1e-12));

  StepFunction trace = dec.density_trace(4);
  REQUIRE(trace.size() == 2);
  CHECK(trace.location(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(trace.weight(0) == 0.5);
  CHECK(trace.location(1) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(trace.weight(1) == 0.25);

  // scalar invariant instance: the ultra route must agree exactly
  StepFunction ultra = dec.density_ultra();
  REQUIRE(ultra.size() == 2);
  CHECK(ultra.weight(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ultra.weight(1) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("4-cycle spectral projector matches the DFT closed form") {
  SpectralDecomposition dec = SpectralDecomposition::compute(make_cycle(4).op);
  // Pi_2(x,y) = cos(pi (x-y) / 2) / 2   (the theta = +-1 characters)
  Eigen::MatrixXd pi2 = dec.spectral_matrix([](double) { return 1.0; }, 3.0);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      const double want =
          0.5 * std::cos(std::numbers::pi * static_cast<double>(x - y) / 2.0);
      CHECK(pi2(x, y) == doctest::Approx(want).epsilon(1e-12));
    }
  CHECK(ultra_norm(pi2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gamma_trace(pi2, 4) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ultra fast path equals the max entry of the spectral matrix") {
  auto check_instance = [](const OperatorInstance& inst) {
    SpectralDecomposition dec = SpectralDecomposition::compute(inst);
    const double cut = dec.max_eigenvalue();
    auto inv = [](double u) { return 1.0 / u; };
    auto heat = [](double u) { return std::exp(-0.7 * u) / u; };
    for (auto f : {std::function<double(double)>(inv),
                   std::function<double(double)>(heat)}) {
      const double fast = dec.ultra_spectral(f, cut);
      const double slow = ultra_norm(dec.spectral_matrix(f, cut));
      CHECK(fast == doctest::Approx(slow).epsilon(1e-10));
    }
  };
  check_instance(make_cycle(6).op);
  check_instance(make_random_psd(24, 5).op);
}

TEST_CASE("4-cycle ultra anchors for inverse and heat-inverse") {
  SpectralDecomposition dec = SpectralDecomposition::compute(make_cycle(4).op);
  const double cut = dec.max_eigenvalue();
  CHECK(dec.ultra_spectral([](double u) { return 1.0 / u; }, cut) ==
        doctest::Approx(0.3125).epsilon(1e-12));
  const double want = std::exp(-2.0) / 4.0 + std::exp(-4.0) / 16.0;
  CHECK(dec.ultra_spectral([](double u) { return std::exp(-u) / u; }, cut) ==
        doctest::Approx(want).epsilon(1e-12));
  CHECK_THROWS_AS(dec.ultra_spectral([](double u) { return 1.0 - u; }, cut),
                  std::invalid_argument);
}

TEST_CASE("identity operator has a single unit atom on both routes") {
  OperatorInstance inst(Eigen::MatrixXd::Identity(3, 3), false, 1, "id3");
  SpectralDecomposition dec = SpectralDecomposition::compute(inst);
  CHECK(dec.kernel_dim() == 0);
  StepFunction ultra = dec.density_ultra();
  REQUIRE(ultra.size() == 1);
  CHECK(ultra.location(0) == 1.0);
  CHECK(ultra.weight(0) == doctest::Approx(1.0).epsilon(1e-12));
  StepFunction trace = dec.density_trace(1);
  REQUIRE(trace.size() == 1);
  CHECK(trace.weight(0) == 3.0);
}

TEST_CASE("ultra density equals the normalized trace on invariant instances") {
  // constancy of projector diagonals along the group makes the two routes
  // agree atom by atom
  for (const OperatorInstance& inst : {make_cycle(6).op, make_torus(2, 4).op}) {
    SpectralDecomposition dec = SpectralDecomposition::compute(inst);
    StepFunction ultra = dec.density_ultra();
    StepFunction trace = dec.density_trace(inst.group_size());
    REQUIRE(ultra.size() == trace.size());
    for (std::size_t i = 0; i < ultra.size(); ++i) {
      CHECK(ultra.location(i) ==
            doctest::Approx(trace.location(i)).epsilon(1e-9));
      CHECK(ultra.weight(i) == doctest::Approx(trace.weight(i)).epsilon(1e-9));
    }
  }
}

TEST_CASE("ultra density of a generic operator is bounded by cluster traces") {
  OperatorInstance inst = make_random_psd(16, 2).op;
  SpectralDecomposition dec = SpectralDecomposition::compute(inst);
  StepFunction ultra = dec.density_ultra();
  StepFunction trace = dec.density_trace(1);
  for (std::size_t i = 0; i < ultra.size(); ++i) {
    const double lam = ultra.location(i);
    CHECK(ultra.value(lam) <= trace.value(lam) * (1.0 + 1e-12));
  }
}

TEST_CASE("kernel classification is insensitive to a 10x threshold change") {
  for (int n : {4, 6}) {
    OperatorInstance inst = make_cycle(n).op;
    SpectralDecomposition a = SpectralDecomposition::compute(inst, 1e-9);
    SpectralDecomposition b = SpectralDecomposition::compute(inst, 1e-8);
    CHECK(a.kernel_dim() == b.kernel_dim());
    StepFunction fa = a.density_trace(n);
    StepFunction fb = b.density_trace(n);
    REQUIRE(fa.size() == fb.size());
    for (std::size_t i = 0; i < fa.size(); ++i) {
      CHECK(fa.location(i) == doctest::Approx(fb.location(i)).epsilon(1e-12));
      CHECK(fa.weight(i) == fb.weight(i));
    }
  }
}

TEST_CASE("random psd instance decomposes cleanly without a kernel") {
  OperatorInstance inst = make_random_psd(64, 23).op;
  CHECK(inst.dimension() == 64);
  CHECK_FALSE(inst.invariant());
  // construction of the decomposition runs the reconstruction,
  // orthonormality, and positivity invariants internally
  SpectralDecomposition dec = SpectralDecomposition::compute(inst);
  CHECK(dec.kernel_dim() == 0);
  CHECK(dec.density_ultra().total_mass() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(dec.density_trace(1).total_mass() == 64.0);
  // determinism: same seed, same matrix
  OperatorInstance again = make_random_psd(64, 23).op;
  CHECK((inst.matrix() - again.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("project off kernel removes the constant mode of the cycle") {
  SpectralDecomposition dec = SpectralDecomposition::compute(make_cycle(4).op);
  Eigen::VectorXd raw(4);
  raw << 1.0, 0.0, 0.0, 0.0;
  Eigen::VectorXd f = dec.project_off_kernel(raw);
  CHECK(f.sum() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK((f - (raw - Eigen::VectorXd::Constant(4, 0.25))).cwiseAbs().maxCoeff() <=
        1e-12);
  Eigen::MatrixXd pk = dec.kernel_projector();
  CHECK((pk * pk - pk).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(pk.trace() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("energy matches the squared differences around the cycle") {
  OperatorInstance inst = make_cycle(4).op;
  Eigen::VectorXd f(4);
  f << 1.0, 0.0, -1.0, 0.0;
  CHECK(inst.energy(f) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("spectral scale invariance of the derived density") {
  // scaling A by c scales atom locations by c and fixes the weights
  OperatorInstance base = make_random_psd(12, 3).op;
  StepFunction f0 = SpectralDecomposition::compute(base).density_ultra();
  for (double c : {1e-3, 1e3}) {
    OperatorInstance scaled(c * base.matrix(), false, 1, "scaled");
    StepFunction fc = SpectralDecomposition::compute(scaled).density_ultra();
    REQUIRE(f0.size() == fc.size());
    for (std::size_t i = 0; i < f0.size(); ++i) {
      CHECK(fc.location(i) ==
            doctest::Approx(c * f0.location(i)).epsilon(1e-8));
      CHECK(fc.weight(i) == doctest::Approx(f0.weight(i)).epsilon(1e-8));
    }
  }
}

TEST_CASE("dense eigensolve refuses oversized operators") {
  CHECK_THROWS_AS(
      SpectralDecomposition::compute(OperatorInstance(
          Eigen::MatrixXd::Identity(kMaxDenseDim + 1, kMaxDenseDim + 1), false,
          1, "too-big")),
      std::runtime_error);
}
