#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "specdens/polynomial_symbol.hpp"

namespace specdens {

/**
 * One JSON document per run. Every field has a default, so minimal configs
 * stay small; parse -> serialize -> parse is the identity on the structure
 * (round-trip property). Unknown keys are rejected to catch typos.
 */
struct InstanceConfig {
  std::string kind = "cycle";  // cycle|torus|cayley-table|complex-file|matrix-file
  int size = 4;                // N, per cover coordinate
  int rank = 1;                // cover rank d
  int degree = 0;              // Hodge degree k
  std::vector<std::vector<int>> labels;  // cayley-table generators
  std::string path;            // complex-file / matrix-file source
  std::string format = "dense";  // matrix-file: dense | triplets

  bool operator==(const InstanceConfig&) const = default;
};

struct ProfilesConfig {
  std::vector<double> y_grid = {0.0625, 0.125, 0.25};
  std::vector<double> t_grid = {0.25, 1.0, 4.0};

  bool operator==(const ProfilesConfig&) const = default;
};

struct CertifyConfig {
  int states = 100;
  bool corrupt = false;  // halve the F atom weights (negative control)
  std::vector<double> t_grid = {0.25, 1.0, 4.0};
  int ultra_points = 20;
  double sandwich_eps = 1.0;
  std::vector<std::string> checks;  // empty = all families

  bool operator==(const CertifyConfig&) const = default;
};

struct ScalingConfig {
  std::vector<int> sizes = {8, 16};
  int degree = 0;
  std::vector<double> fit_window;  // empty or {lo, hi}
  std::vector<int> k_candidates = {0, 1, 2};
  double p = 6.0;  // Sobolev exponent; serialized "inf" for the sup norm
  int sample_budget = 64;

  bool operator==(const ScalingConfig&) const = default;
};

struct ContinuumConfig {
  int n = 3;
  std::vector<PolynomialSymbol::Term> symbol;  // empty = |xi|^2
  std::vector<double> grid;
  long budget = 1'000'000;
  std::vector<double> box;     // empty = auto box
  std::vector<double> window;  // empty or {lo, hi} for the exponent readoff
  std::vector<int> k_candidates = {0, 1, 2};

  bool operator==(const ContinuumConfig&) const = default;
};

struct RunConfig {
  InstanceConfig instance;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out = "out";
  ProfilesConfig profiles;
  CertifyConfig certify;
  ScalingConfig scaling;
  ContinuumConfig continuum;

  bool operator==(const RunConfig&) const = default;

  // instance kind / ranges / grid orderings / referenced files; throws with
  // the offending field named
  void validate() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& cfg);

}  // namespace specdens
