#include "run_artifacts.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qtrack/errors.hpp"
#include "svg_plot.hpp"

namespace qtrack::cli {
namespace {

std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream stream(file);
  if (!stream) throw Error("cannot open '" + file.string() + "' for writing");
  return stream;
}

void append_g17(std::string& row, double v, char trailer) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  row += buf;
  row += trailer;
}

constexpr const char* kBlue = "#1f77b4";
constexpr const char* kRed = "#d62728";
constexpr const char* kGreen = "#2ca02c";
constexpr const char* kOrange = "#ff7f0e";
constexpr const char* kPurple = "#9467bd";

}  // namespace

bool AxisCheck::enforced_ok() const {
  return loop_report.integrator_ok && loop_report.resonant_pairs_all_ok() &&
         loop_report.remaining_poles_stable && recoverability.recoverable;
}

AxisCheck run_axis_checks(const AxisBuild& axis) {
  AxisCheck check;
  check.name = axis.name;
  check.loop_report = check_theorem1(axis.loop_tf, axis.loop.reference);
  check.recoverability =
      reference_is_recoverable(axis.loop.reference, axis.loop.quantizer);
  return check;
}

std::string format_axis_check(const AxisCheck& check) {
  const auto& report = check.loop_report;
  const auto& rec = check.recoverability;
  std::ostringstream out;
  const auto line = [&](const char* label, bool ok) {
    out << "  [" << (ok ? "PASS" : "FAIL") << "] " << label << "\n";
  };
  out << "axis " << check.name << ":\n";
  line("integral action matches the reference offset", report.integrator_ok);
  line("simple resonant pole pair at each reference harmonic",
       report.resonant_pairs_all_ok());
  line("all remaining loop poles strictly stable", report.remaining_poles_stable);
  line("reference recoverable from quantization-boundary crossings",
       rec.recoverable);
  out << "         crossings p=" << rec.crossing_count << ", required "
      << rec.required << ", matrix rank " << rec.rank << "\n";
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "  [%s] loop positive real (advisory): min Re = %.3e at w = %.4g "
                "rad/s\n",
                report.pr.positive_real ? "PASS" : "warn", report.pr.min_real_part,
                report.pr.min_real_part_omega);
  out << buf;
  return out.str();
}

nlohmann::json axis_check_json(const AxisCheck& check) {
  const auto& report = check.loop_report;
  const auto& rec = check.recoverability;
  return {{"axis", std::string(1, check.name)},
          {"integrator_ok", report.integrator_ok},
          {"resonant_pairs_ok", report.resonant_pairs_all_ok()},
          {"remaining_poles_stable", report.remaining_poles_stable},
          {"positive_real", report.pr.positive_real},
          {"min_real_part", report.pr.min_real_part},
          {"min_real_part_omega", report.pr.min_real_part_omega},
          {"recoverable", rec.recoverable},
          {"crossing_count", rec.crossing_count},
          {"crossings_required", rec.required},
          {"crossing_matrix_rank", rec.rank},
          {"enforced_ok", check.enforced_ok()}};
}

void write_trace_csv(const std::filesystem::path& file, const SimTrace& trace) {
  std::ofstream stream = open_out(file);
  stream << "# units: t [s], r y qr qy e e_tilde [um], u [plant input]\n";
  stream << "t,r,y,qr,qy,e,e_tilde,u\n";
  std::string row;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    row.clear();
    append_g17(row, trace.t[i], ',');
    append_g17(row, trace.r[i], ',');
    append_g17(row, trace.y[i], ',');
    append_g17(row, trace.qr[i], ',');
    append_g17(row, trace.qy[i], ',');
    append_g17(row, trace.e[i], ',');
    append_g17(row, trace.e_tilde[i], ',');
    append_g17(row, trace.u[i], '\n');
    stream << row;
  }
  if (!stream) throw Error("write failed for '" + file.string() + "'");
}

void write_summary_csv(const std::filesystem::path& file, const DualAxisTrace& dual) {
  std::ofstream stream = open_out(file);
  stream << "# units: t [s], ex ey enorm [um]\n";
  stream << "t,ex,ey,enorm\n";
  std::string row;
  for (std::size_t i = 0; i < dual.e_norm.size(); ++i) {
    row.clear();
    append_g17(row, dual.x.t[i], ',');
    append_g17(row, dual.x.e[i], ',');
    append_g17(row, dual.y.e[i], ',');
    append_g17(row, dual.e_norm[i], '\n');
    stream << row;
  }
  if (!stream) throw Error("write failed for '" + file.string() + "'");
}

void write_axis_panels_svg(const std::filesystem::path& file, char axis_name,
                           const SimTrace& trace) {
  const std::string axis(1, axis_name);
  Panel tracking{.title = "axis " + axis + ": reference and output",
                 .x_label = "t [s]",
                 .y_label = "displacement [um]",
                 .series = {{"r", kBlue, trace.t, trace.r},
                            {"y", kRed, trace.t, trace.y}}};
  Panel errors{.title = "axis " + axis + ": tracking error and loop input",
               .x_label = "t [s]",
               .y_label = "error [um]",
               .series = {{"e = r - y", kGreen, trace.t, trace.e},
                          {"e~ (loop input)", kOrange, trace.t, trace.e_tilde}}};
  Panel effort{.title = "axis " + axis + ": control effort",
               .x_label = "t [s]",
               .y_label = "u",
               .series = {{"u", kPurple, trace.t, trace.u}}};
  write_svg(file, {tracking, errors, effort});
}

void write_trajectory_svg(const std::filesystem::path& file, const DualAxisTrace& dual) {
  Panel plane{.title = "scan plane: commanded vs measured",
              .x_label = "x [um]",
              .y_label = "y [um]",
              .equal_aspect = true,
              .series = {{"reference", kBlue, dual.x.r, dual.y.r},
                         {"output", kRed, dual.x.y, dual.y.y}}};
  write_svg(file, {plane});
}

void write_error_norm_svg(const std::filesystem::path& file, const DualAxisTrace& dual) {
  Panel norm{.title = "euclidean tracking error",
             .x_label = "t [s]",
             .y_label = "|e| [um]",
             .log_y = true,
             .series = {{"|e|", kBlue, dual.x.t, dual.e_norm}}};
  write_svg(file, {norm});
}

}  // namespace qtrack::cli
