#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rgpert {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
	exit_ok = 0,
	exit_check_failed = 1,
	exit_spec_error = 2,
	exit_polar_pairing = 3,
	exit_numeric_overflow = 4,
};

/// Environment variable that sets the output directory when --out is absent.
inline constexpr const char* output_dir_env = "RGPERT_OUTPUT_DIR";

/// Runs "rgpert <args...>" writing to out/err; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rgpert
