#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tame::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// One invocation of the tool. Defaults follow ToleranceConfig.
struct RunConfig {
    std::string subcommand;
    std::optional<std::string> function_spec;
    std::optional<std::string> input_path;
    std::optional<std::string> output_path;
    int grid_n = 1024;
    double eps_value = 1e-9;
    double eps_deriv = 1e-6;
    std::uint64_t seed = 0;
    bool emit_plot_data = false;

    int k = 2;
    int base = 2;
    int precision = 16;
    std::optional<double> x;
    int trials = 1000;
    int n_max = 512;
    int j_min = 0;
    int j_max = 40;
    std::optional<std::string> second_function;
    std::optional<std::string> automaton_path;
    std::vector<std::string> words;
    int p_min = 4;
    int p_max = 10;
};

/// Subcommands that analyse a single function.
bool needs_function(const std::string& subcommand);

/// Runs one subcommand. The JSON report goes to cfg.output_path, or to `out`
/// when none is set. Errors are written to `err` as {error, detail}.
/// Exit codes: 0 success, 2 precondition failure, 3 internal failure.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and calls run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tame::cli
