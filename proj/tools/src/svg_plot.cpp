#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "qtrack/errors.hpp"

namespace qtrack::cli {
namespace {

constexpr double kWidth = 960.0;
constexpr double kPanelHeight = 300.0;
constexpr double kMarginLeft = 78.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 48.0;
constexpr std::size_t kMaxDrawnPoints = 2400;

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void take(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool valid() const { return lo <= hi; }
  /// Degenerate ranges get a little padding so the mapping stays invertible.
  void inflate() {
    if (!valid()) {
      lo = 0.0;
      hi = 1.0;
    } else if (lo == hi) {
      const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
      lo -= pad;
      hi += pad;
    }
  }
};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt_px(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// "Nice number" rounding for tick spacing: 1, 2 or 5 times a power of ten.
double nice_step(double span, int target_ticks) {
  const double raw = span / std::max(1, target_ticks);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double nice = 10.0;
  if (frac <= 1.0)
    nice = 1.0;
  else if (frac <= 2.0)
    nice = 2.0;
  else if (frac <= 5.0)
    nice = 5.0;
  return nice * mag;
}

std::vector<double> linear_ticks(const Range& r, int target = 5) {
  const double step = nice_step(r.hi - r.lo, target);
  std::vector<double> ticks;
  const double first = std::ceil(r.lo / step) * step;
  for (double v = first; v <= r.hi + step * 1e-9; v += step)
    ticks.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
  return ticks;
}

std::vector<double> decade_ticks(const Range& r) {
  std::vector<double> ticks;
  const int lo = static_cast<int>(std::ceil(r.lo - 1e-9));
  const int hi = static_cast<int>(std::floor(r.hi + 1e-9));
  // At most ~12 labels; coarsen by skipping decades when the span is huge.
  const int skip = std::max(1, (hi - lo) / 12 + ((hi - lo) % 12 ? 1 : 0));
  for (int d = lo; d <= hi; d += skip) ticks.push_back(static_cast<double>(d));
  return ticks;
}

std::string decade_label(double exponent) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "1e%d", static_cast<int>(std::lround(exponent)));
  return buf;
}

void escape_into(std::ostringstream& out, const std::string& text) {
  for (char c : text) {
    switch (c) {
      case '&': out << "&amp;"; break;
      case '<': out << "&lt;"; break;
      case '>': out << "&gt;"; break;
      default: out << c;
    }
  }
}

}  // namespace

void write_svg(const std::filesystem::path& file, const std::vector<Panel>& panels) {
  if (panels.empty()) throw Error("write_svg: no panels");
  const double total_height = kPanelHeight * static_cast<double>(panels.size());

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << total_height << "\" viewBox=\"0 0 " << kWidth << ' '
      << total_height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t pi = 0; pi < panels.size(); ++pi) {
    const Panel& panel = panels[pi];
    const double top = kPanelHeight * static_cast<double>(pi) + kMarginTop;
    const double bottom = kPanelHeight * static_cast<double>(pi + 1) - kMarginBottom;
    const double left = kMarginLeft;
    const double right = kWidth - kMarginRight;

    const auto transform_y = [&](double v) {
      if (!panel.log_y) return v;
      return std::log10(std::max(std::abs(v), panel.log_floor));
    };

    Range rx, ry;
    for (const Series& s : panel.series) {
      if (s.x.size() != s.y.size())
        throw Error("write_svg: series '" + s.label + "' has mismatched lengths");
      for (double v : s.x) rx.take(v);
      for (double v : s.y) ry.take(transform_y(v));
    }
    rx.inflate();
    ry.inflate();
    if (!panel.log_y) {
      // Breathing room so curves do not sit on the frame.
      const double pad = (ry.hi - ry.lo) * 0.05;
      ry.lo -= pad;
      ry.hi += pad;
    }
    if (panel.equal_aspect) {
      const double sx = (rx.hi - rx.lo) / (right - left);
      const double sy = (ry.hi - ry.lo) / (bottom - top);
      if (sx > sy) {
        const double c = 0.5 * (ry.lo + ry.hi), h = sx * (bottom - top);
        ry.lo = c - 0.5 * h;
        ry.hi = c + 0.5 * h;
      } else {
        const double c = 0.5 * (rx.lo + rx.hi), w = sy * (right - left);
        rx.lo = c - 0.5 * w;
        rx.hi = c + 0.5 * w;
      }
    }

    const auto px = [&](double v) {
      return left + (v - rx.lo) / (rx.hi - rx.lo) * (right - left);
    };
    const auto py = [&](double v) {
      return bottom - (transform_y(v) - ry.lo) / (ry.hi - ry.lo) * (bottom - top);
    };

    // Frame and grid.
    out << "<rect x=\"" << fmt_px(left) << "\" y=\"" << fmt_px(top) << "\" width=\""
        << fmt_px(right - left) << "\" height=\"" << fmt_px(bottom - top)
        << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";

    for (double tv : linear_ticks(rx)) {
      const double x = px(tv);
      out << "<line x1=\"" << fmt_px(x) << "\" y1=\"" << fmt_px(top) << "\" x2=\""
          << fmt_px(x) << "\" y2=\"" << fmt_px(bottom)
          << "\" stroke=\"#ddd\" stroke-width=\"0.6\"/>\n";
      out << "<text x=\"" << fmt_px(x) << "\" y=\"" << fmt_px(bottom + 16)
          << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
          << fmt(tv) << "</text>\n";
    }
    const std::vector<double> yticks =
        panel.log_y ? decade_ticks(ry) : linear_ticks(ry);
    for (double tv : yticks) {
      const double y = bottom - (tv - ry.lo) / (ry.hi - ry.lo) * (bottom - top);
      out << "<line x1=\"" << fmt_px(left) << "\" y1=\"" << fmt_px(y) << "\" x2=\""
          << fmt_px(right) << "\" y2=\"" << fmt_px(y)
          << "\" stroke=\"#ddd\" stroke-width=\"0.6\"/>\n";
      out << "<text x=\"" << fmt_px(left - 6) << "\" y=\"" << fmt_px(y + 4)
          << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
          << (panel.log_y ? decade_label(tv) : fmt(tv)) << "</text>\n";
    }

    out << "<text x=\"" << fmt_px(0.5 * (left + right)) << "\" y=\""
        << fmt_px(top - 14)
        << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">";
    escape_into(out, panel.title);
    out << "</text>\n";
    out << "<text x=\"" << fmt_px(0.5 * (left + right)) << "\" y=\""
        << fmt_px(bottom + 34)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">";
    escape_into(out, panel.x_label);
    out << "</text>\n";
    out << "<text x=\"" << fmt_px(14) << "\" y=\"" << fmt_px(0.5 * (top + bottom))
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\""
        << " transform=\"rotate(-90 14 " << fmt_px(0.5 * (top + bottom)) << ")\">";
    escape_into(out, panel.y_label);
    out << "</text>\n";

    // Curves, decimated for display.
    for (const Series& s : panel.series) {
      const std::size_t n = s.x.size();
      if (n == 0) continue;
      const std::size_t stride = n > kMaxDrawnPoints ? n / kMaxDrawnPoints + 1 : 1;
      out << "<polyline fill=\"none\" stroke=\"" << s.color
          << "\" stroke-width=\"1.2\" points=\"";
      for (std::size_t i = 0; i < n; i += stride) {
        out << fmt_px(px(s.x[i])) << ',' << fmt_px(py(s.y[i])) << ' ';
        if (i + stride >= n && i != n - 1) {
          out << fmt_px(px(s.x[n - 1])) << ',' << fmt_px(py(s.y[n - 1])) << ' ';
        }
      }
      out << "\"/>\n";
    }

    // Legend, top-right corner of the plotting area.
    double ly = top + 16;
    for (const Series& s : panel.series) {
      const double lx = right - 150;
      out << "<line x1=\"" << fmt_px(lx) << "\" y1=\"" << fmt_px(ly - 4)
          << "\" x2=\"" << fmt_px(lx + 22) << "\" y2=\"" << fmt_px(ly - 4)
          << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
      out << "<text x=\"" << fmt_px(lx + 28) << "\" y=\"" << fmt_px(ly)
          << "\" font-family=\"sans-serif\" font-size=\"11\">";
      escape_into(out, s.label);
      out << "</text>\n";
      ly += 15;
    }
  }
  out << "</svg>\n";

  std::ofstream stream(file);
  if (!stream) throw Error("write_svg: cannot open " + file.string());
  stream << out.str();
  if (!stream) throw Error("write_svg: write failed for " + file.string());
}

}  // namespace qtrack::cli
