#pragma once

#include <iosfwd>

#include "cli/config.hpp"
#include "cli/report.hpp"

namespace accel::cli {

// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 2;
inline constexpr int kExitInfrastructure = 3;

Report cmd_branch(const RunConfig& c);
Report cmd_xval(const RunConfig& c);
Report cmd_lattice(const RunConfig& c);
Report cmd_vacuum(const RunConfig& c);
Report cmd_propagator(const RunConfig& c);
Report cmd_multidof(const RunConfig& c);

// Full front end: parse, dispatch, emit to --out or `out`, summaries to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace accel::cli
