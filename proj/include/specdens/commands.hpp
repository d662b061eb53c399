#pragma once

#include "specdens/run_config.hpp"

namespace specdens {

// Subcommand drivers: each builds what it needs from the config, writes its
// CSV artifacts under cfg.out (created if missing, atomic writes), prints a
// short summary to stdout, and returns the process exit code.

// eigenvalues.csv + density.csv: cover kinds go through the character blocks,
// matrix files through the dense decomposition with the ultra-norm density.
int cmd_spectrum(const RunConfig& cfg);

// density.csv, g.csv, profiles_y.csv (y,H,N), profiles_t.csv (t,L,M).
int cmd_profiles(const RunConfig& cfg);

// report.csv via run_suite; exit 1 iff a theorem-backed record failed.
int cmd_certify(const RunConfig& cfg);

// Per-size density CSVs, exponent fits inside scaling.fit_window (skipped
// when unset), Sobolev-constant brackets, and a cross-size summary.
int cmd_scaling(const RunConfig& cfg);

// rn.csv (closed-form R^n profile constants, n >= 3), symbol_density.csv
// from the Monte-Carlo sampler, optional exponent readoff.
int cmd_continuum(const RunConfig& cfg);

}  // namespace specdens
