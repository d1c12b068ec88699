#pragma once

#include "irsa/harness.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irsa {

enum class Command { sweep, tune, compare, decode_one };

std::string_view to_string(Command command);
std::optional<Command> parse_command(std::string_view name);

struct ExperimentConfig {
    Command command = Command::sweep;
    SweepSpec spec;
    RsTuneOptions rs_tuning = RsTuneOptions::defaults();
    MuTuneOptions mu_tuning;
    CompareOptions compare;
    std::string output_dir = "out";
    bool emit_plot_data = false;

    bool operator==(const ExperimentConfig&) const = default;
};

struct ParseResult {
    std::optional<ExperimentConfig> config;
    std::vector<std::string> errors; // every problem found, each prefixed with its key path
};

/// Parses and validates a JSON experiment description. Unknown keys are
/// rejected; all errors are collected rather than stopping at the first.
ParseResult parse_config(std::string_view text);

/// JSON text that parse_config maps back to an equal config.
std::string to_json(const ExperimentConfig& config);

/// Cross-field checks shared by the parser and the CLI after flag overrides.
std::vector<std::string> check_config(const ExperimentConfig& config);

} // namespace irsa
