#pragma once

#include <iosfwd>
#include <string>

#include "spinsim/config.hpp"

namespace spinsim::scenarios {

// Runs one named scenario, writing CSV/JSON artifacts under cfg.out_dir and a
// JSON summary to `out`. Returns the process exit code: 0 success, 2 on
// non-convergence (partial artifacts are still written). Unknown names throw.
// Names: lattice-sums, semiinv-validate, hte, adrf, meanfield, aht,
// validate-aht, inp-walkthrough.
int run_scenario(const std::string& name, const config::RunConfig& cfg, std::ostream& out);

}  // namespace spinsim::scenarios
