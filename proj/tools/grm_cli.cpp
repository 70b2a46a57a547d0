#include <cstdio>

#include "grm/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    grm::CliResult res = grm::run_cli(args);
    std::fputs(res.output.c_str(), stdout);
    return res.exit_code;
}
