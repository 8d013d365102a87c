#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace mesodefect::cli {

enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_input = 2, exit_inconclusive = 3 };

// Entry point without argv[0]; writes results to out and diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_validate(const RunConfig& c, std::ostream& out);
int cmd_sample(const RunConfig& c, const std::string& what, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& c, std::ostream& out);
int cmd_decompose(const RunConfig& c, const std::string& out_prefix, std::ostream& out, std::ostream& err);

} // namespace mesodefect::cli
