#ifndef GRM_CLI_HPP
#define GRM_CLI_HPP

#include <string>
#include <vector>

namespace grm {

// Exit codes: 0 success, 1 usage error, 2 cap exceeded, 3 verification
// (or decode) failure.
struct CliResult {
    int exit_code = 0;
    std::string output;
};

// Full command surface of the `grm` tool, callable in-process so tests can
// pin byte-identical outputs.  `args` excludes argv[0].
CliResult run_cli(const std::vector<std::string>& args);

extern const char* kToolVersion;

}  // namespace grm

#endif
