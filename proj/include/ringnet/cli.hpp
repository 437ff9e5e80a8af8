#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ringnet/consensus.hpp"
#include "ringnet/sim.hpp"
#include "ringnet/spectra.hpp"

namespace ringnet::cli {

/// Entry point for the command-line tool. args excludes the program name.
/// Returns 0 on success, 1 on computation failure (bracket or convergence
/// errors), 2 on usage errors. Output files are written only after the whole
/// result has been computed, so usage or computation errors never leave
/// partial files behind.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// Doubles serialize with 17 significant digits everywhere (CSV and JSON),
/// which round-trips exactly.
std::string format_g17(double v);

// Formatting helpers shared by the subcommands. The CLI is a thin adapter:
// these take library results as-is, and tests reproduce CLI output
// byte-for-byte by calling the same library + formatter pair.

std::string spectrum_csv(const std::vector<Complex>& eigenvalues,
                         const std::vector<double>& residuals);

std::string margin_table_csv(const std::vector<consensus::MarginResult>& rows);

std::string region_csv(const std::string& topology, int n, double gamma, bool criterion,
                       bool theorem, double max_re, double threshold);

std::string trajectory_csv(const sim::Trajectory& traj, int n, bool full_state);

}  // namespace ringnet::cli
