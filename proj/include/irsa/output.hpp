#pragma once

#include "irsa/config.hpp"
#include "irsa/harness.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace irsa {

/// Six significant digits, locale-independent; NaN and infinities print as "NA".
std::string format_number(double x);

extern const char* const kCsvHeader;

void write_csv(std::ostream& out, const std::vector<SweepRecord>& records);
/// Throws std::runtime_error when the file cannot be written.
void emit_csv(const std::filesystem::path& path, const std::vector<SweepRecord>& records);

/// Config, resolved per-point parameters and errors as JSON.
void emit_sidecar(const std::filesystem::path& path, const ExperimentConfig& config,
                  const std::vector<SweepRecord>& records);

/// Writes `<metric>__<scheme>__<distribution>.dat` files of (G, value) rows
/// into `dir` and returns the paths written. A series without any defined
/// value is skipped and reported through `warnings`.
std::vector<std::filesystem::path> emit_plot_data(const std::filesystem::path& dir,
                                                  const std::vector<SweepRecord>& records,
                                                  std::vector<std::string>& warnings);

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows);
void emit_compare_csv(const std::filesystem::path& path, const std::vector<CompareRow>& rows);

} // namespace irsa
