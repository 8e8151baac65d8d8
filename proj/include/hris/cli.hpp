// SPDX-License-Identifier: Apache-2.0
#ifndef HRIS_CLI_HPP
#define HRIS_CLI_HPP

#include <string>
#include <vector>

namespace hris {

// Environment variable consulted for the default output directory.
inline constexpr const char* kOutputDirEnvVar = "HRIS_OUT_DIR";

// Full command-line entry point. Returns the process exit code: 0 on
// success, nonzero with a diagnostic on stderr for any failure.
int run_cli(int argc, const char* const* argv);
// Convenience for tests; args exclude the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace hris

#endif
