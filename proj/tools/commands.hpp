#pragma once

#include <string>

namespace CLI {
class App;
}

namespace pf::cli {

// Registers every subcommand on the root app. Exit codes: 0 success,
// 1 verification failure, 2 invalid input.
void register_commands(CLI::App& app, int& exit_code);

// Canned parameter sets for the paper-style outputs (fig5..fig9, synth).
int run_reproduce(const std::string& figure, const std::string& outdir, uint64_t shots_override,
                  uint64_t samples_override, uint64_t seed);

}  // namespace pf::cli
