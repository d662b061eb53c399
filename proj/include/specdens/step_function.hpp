#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <utility>
#include <vector>

namespace specdens {

// +infinity is used as a distinguished sentinel for right inverses queried at
// or above the total mass of a step function. It is produced deliberately,
// never as an overflow artifact.
inline constexpr double kPlusInf = std::numeric_limits<double>::infinity();

inline bool is_sentinel(double v) { return v == kPlusInf; }

/**
 * Nondecreasing, right-continuous pure step function vanishing at 0,
 * represented by finitely many atoms (location, weight) with locations > 0
 * and weights > 0.
 *
 * This is the container for spectral decay functions F(lambda) and their
 * derived transforms: value(l) sums the weights of atoms at locations <= l.
 */
class StepFunction {
 public:
  StepFunction() = default;

  // Atoms in any order; exactly coincident locations are merged by summing
  // weights. Throws std::invalid_argument on nonpositive locations/weights
  // or non-finite input.
  static StepFunction from_atoms(std::vector<std::pair<double, double>> atoms);

  // Builds from an ascending list of values (e.g. eigenvalues), clustering
  // runs closer than tol into one atom at the cluster mean, each value
  // contributing weight_each.
  static StepFunction from_sorted_values(const std::vector<double>& values,
                                         double tol, double weight_each);

  std::size_t size() const { return locs_.size(); }
  bool empty() const { return locs_.empty(); }
  double location(std::size_t i) const { return locs_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  double cumulative(std::size_t i) const { return cum_[i]; }
  double total_mass() const { return empty() ? 0.0 : cum_.back(); }
  double first_location() const;
  double last_location() const;

  // F(lambda): sum of weights at locations <= lambda. 0 below the first atom.
  double value(double lambda) const;
  double operator()(double lambda) const { return value(lambda); }

  // Right-continuous inverse sup{ l : F(l) <= y } for y >= 0. Returns the
  // +inf sentinel when y >= total mass. Resolved by binary search over atom
  // indices, so exact ties behave deterministically.
  double right_inverse(double y) const;

  // Atom-wise transform (l_i, w_i) -> (l_i, w_i / l_i); this turns a spectral
  // density F into its resolvent-mass transform G.
  StepFunction reciprocal_transform() const;

  // Laplace transform of the atom measure: sum_i w_i exp(-l_i t), t >= 0.
  double laplace(double t) const;

  // Same atoms with every weight multiplied by c > 0 (used by negative
  // controls and monotonicity tests).
  StepFunction scaled_weights(double c) const;

  // Indices of atoms with location in [lo, hi].
  std::vector<std::size_t> indices_in(double lo, double hi) const;

  bool operator==(const StepFunction& other) const = default;

 private:
  std::vector<double> locs_;     // strictly increasing, > 0
  std::vector<double> weights_;  // > 0
  std::vector<double> cum_;      // prefix sums of weights_
};

// Two-column CSV "lambda,weight", atoms ascending, one '#' metadata line.
void write_step_function(const std::filesystem::path& path,
                         const StepFunction& f, std::uint64_t seed);
StepFunction read_step_function(const std::filesystem::path& path);

}  // namespace specdens
