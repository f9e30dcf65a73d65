#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "qtrack/pr_design.hpp"
#include "qtrack/reference.hpp"
#include "qtrack/sim_loop.hpp"

namespace qtrack::cli {

/// Verdicts of the pre-flight design checks for one axis.
struct AxisCheck {
  char name = 'x';
  TheoremOneReport loop_report;
  RecoverabilityReport recoverability;

  /// What cmd_check enforces: the internal-model conditions plus reference
  /// recoverability.  Passivity of the padded loop is reported but advisory,
  /// since the causality padding always leaves a slightly negative real part
  /// at high frequency.
  bool enforced_ok() const;
};

AxisCheck run_axis_checks(const AxisBuild& axis);

/// Human-readable multi-line report, and the same content as JSON for the
/// manifest.
std::string format_axis_check(const AxisCheck& check);
nlohmann::json axis_check_json(const AxisCheck& check);

/// One recorded trace with a units comment line, a header and one row per
/// sample at 17 significant digits (rewriting the same trace is
/// byte-identical).
void write_trace_csv(const std::filesystem::path& file, const SimTrace& trace);

/// t, per-axis errors and the euclidean norm for a dual run.
void write_summary_csv(const std::filesystem::path& file, const DualAxisTrace& dual);

/// Three stacked panels for one axis: tracking, errors, control effort.
void write_axis_panels_svg(const std::filesystem::path& file, char axis_name,
                           const SimTrace& trace);

/// The commanded and measured paths overlaid in the scan plane.
void write_trajectory_svg(const std::filesystem::path& file, const DualAxisTrace& dual);

/// Euclidean tracking error against time on a decade scale.
void write_error_norm_svg(const std::filesystem::path& file, const DualAxisTrace& dual);

}  // namespace qtrack::cli
