#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qdipole/config.hpp"

namespace qdtool {

// subcommand-specific switches that are not config keys
struct CommandFlags {
  bool fulltime = false;       // coefficients: add A(w; t) rows on the t grid
  bool perturbative = false;   // rates: canonical perturbation theory instead of dense
  bool nullspace = false;      // asymptotic: null eigen-operator instead of the formula
};

const std::vector<std::string>& command_names();

// Writes the provenance header and the table for `cmd` to `out`. dark-states
// prints its report to `console` and the basis CSV to `out` only when an
// output path is configured. Throws qd::Error.
void run_command(const std::string& cmd, const qd::RunConfig& cfg, const CommandFlags& flags,
                 std::ostream& out, std::ostream& console);

}  // namespace qdtool
