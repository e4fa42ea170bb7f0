#pragma once

// Delimited-text outputs. Every table starts with a '#' comment block holding
// the effective configuration, followed by one header row and data rows.
// Numbers use 9 significant digits and are formatted independently of locale.

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "dd/analysis.hpp"
#include "dd/ensemble.hpp"
#include "dd/units.hpp"

namespace dd {

/// Shortest "%.9g"-equivalent text, always with '.' as decimal separator.
std::string format_number(double x);

/// "symmetric" when |v| < 3 v_err, "directed" otherwise.
std::string current_status(double v, double v_err);

void write_comment_block(std::ostream& os, const SimParams& params);

/// Rows (t, cm, stderr).
void write_cm_table(std::ostream& os, const EnsembleResult& res, const SimParams& params);

/// Rows (<parameter>, v, v_err, status) followed by a "# sigma_v = ..." line.
void write_sweep_table(std::ostream& os, const SweepResult& sweep, const SimParams& params);

/// Two whitespace-separated columns (parameter, v) for plotting tools.
void write_curve(std::ostream& os, const SweepResult& sweep);

struct RunManifest {
  SimParams params;
  std::string command;
  std::string version;
  double wall_seconds = 0.0;
  std::vector<std::filesystem::path> outputs;
};

std::string manifest_json(const RunManifest& manifest);

}  // namespace dd
