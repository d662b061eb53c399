#pragma once

#include <cstdint>
#include <vector>

#include "specdens/block_family.hpp"
#include "specdens/operator_instance.hpp"
#include "specdens/simplicial_complex.hpp"
#include "specdens/step_function.hpp"

namespace specdens {

/**
 * Z^d cover of a finite base complex, presented by translation labels on
 * oriented 1-cells and realized through the finite quotient over (Z/NZ)^d.
 * A lift of cell (v0..vk) based at group element a places vertex vi at
 * a + m(v0->vi), so face 0 shifts by the label of the edge (v0, v1) and all
 * other faces stay at a. Labels attach to cells as oriented; the reversal
 * convention (negated label) is the caller's to respect when presenting.
 *
 * Validation checks the cocycle condition mod N on every 2-cell and then
 * verifies d o d = 0 exactly on the assembled quotient.
 */
struct AbelianCoverSpec {
  SimplicialComplex base;
  std::vector<std::vector<int>> labels;  // per 1-cell, each of size rank
  int rank = 1;
  int quotient_size = 2;  // N, per coordinate

  void validate() const;
  int group_order() const;  // N^rank
};

// Quotient complex over (Z/NZ)^d; degree-k cell (sigma, a) has index
// flat(a) * #K_k + sigma with flat(a) = sum_j a_j N^j.
SimplicialComplex quotient_complex(const AbelianCoverSpec& spec);

// d_k at character theta: entries (-1)^j with the unit phase
// exp(2 pi i <m(tau), theta> / N) on face-0 entries.
Eigen::MatrixXcd twisted_coboundary(const AbelianCoverSpec& spec, int k,
                                    const std::vector<int>& theta);

// Hodge blocks d_k(theta)* d_k(theta) for all N^d characters.
BlockFamily twisted_blocks(const AbelianCoverSpec& spec, int k, int jobs = 1);

// Normalized spectral density: positive block eigenvalues weighted 1/N^d,
// kernel discarded against the family's global threshold.
StepFunction hodge_density(const AbelianCoverSpec& spec, int k, int jobs = 1);

// Dense quotient Hodge operator d_k^T d_k as an invariant OperatorInstance
// with fiber dimension #K_k.
OperatorInstance quotient_hodge(const AbelianCoverSpec& spec, int k);

// max over characters of |d_{k+1}(theta) d_k(theta)|_max.
double twisted_dd_defect(const AbelianCoverSpec& spec, int k);

struct SobolevBracket {
  double lower = 0.0;
  double upper = 0.0;
  int samples = 0;
};

// Two-sided bracket on the best constant in |alpha|_p <= C |d_k alpha|_2 over
// alpha orthogonal to ker d_k. Upper: interpolation
// (1/sqrt(lambda_min+))^(2/p) * |T|_{2->inf}^(1-2/p). Lower: max sampled
// ratio over kernel-projected Gaussians, the lifted bottom eigenvector, and
// the pseudo-inverse column at the maximizing coordinate. p = kPlusInf means
// the sup norm; p < 2 is rejected.
SobolevBracket sobolev_ratio(const AbelianCoverSpec& spec, int k, double p,
                             int budget, std::uint64_t seed, int jobs = 1);

}  // namespace specdens
