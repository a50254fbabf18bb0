#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcd::cli {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitValidation = 2;

/*!
 * Parses `args` (without the program name) and runs one subcommand among
 * paths, verify-qcd, clark-ocone, chaos, hedge, heat-check, girsanov.
 *
 * The report goes to `--output PATH` or to `out`; diagnostics go to `err`.
 * Every report embeds the resolved configuration: CSV reports start with
 * "# key = value" lines, JSON reports carry a "config" object. Either form,
 * saved as a file and passed back through `--config`, reproduces the run.
 */
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcd::cli
