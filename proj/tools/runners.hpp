#pragma once

#include "config.hpp"

#include <iosfwd>
#include <string>

namespace cornerheat::cli {

inline constexpr const char* kVersion = "0.1.0";

// Each runner writes '#'-prefixed metadata, a header row and CSV data rows
// to `out`, and returns the process exit code:
//   0  success, all configured tolerances met
//   1  ran to completion but a tolerance failed
//   2  invalid input
int run_eigen(const ExperimentConfig& cfg, std::ostream& out);
int run_hardy(const ExperimentConfig& cfg, std::ostream& out);
int run_evolve(const ExperimentConfig& cfg, std::ostream& out);
int run_sweep(const ExperimentConfig& cfg, std::ostream& out);

// argv-level entry point used by main() and by the tests
int cli_main(int argc, const char* const* argv);

}  // namespace cornerheat::cli
