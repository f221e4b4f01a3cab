#include "qcal/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <iterator>
#include <sstream>
#include <tuple>

#include "qcal/error.hpp"

namespace qcal {

namespace {

std::string format_number(double v, int significant) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", significant, v);
  return buf;
}

std::string slug(const std::string& name) {
  std::string out;
  for (char ch : name) {
    const bool keep = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                      (ch >= '0' && ch <= '9') || ch == '.' || ch == '-';
    if (keep) {
      out += ch;
    } else if (out.empty() || out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "curve" : out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// Tick positions at 1/2/5 x 10^k covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
  const double span = hi - lo;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  const double first = std::ceil(lo / step - 1e-9) * step;
  for (double t = first; t <= hi + step * 1e-9; t += step) ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  return ticks;
}

std::pair<double, double> padded_range(double lo, double hi) {
  if (hi - lo <= 1e-300 * std::max(1.0, std::abs(lo))) {
    const double pad = std::max(std::abs(lo) * 0.05, 1e-12);
    return {lo - pad, hi + pad};
  }
  const double pad = 0.04 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open \"" + path + "\" for writing", path);
  out << contents;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "failed writing \"" + path + "\"", path);
}

std::string format_csv(const Curve& curve) {
  std::string out = "abscissa_" + curve.abscissa_unit + ",value_" + curve.value_unit + ",error_estimate\n";
  for (const auto& p : curve.points) {
    out += format_number(p.abscissa, 12) + "," + format_number(p.value, 12) + "," +
           format_number(p.error_estimate, 12) + "\n";
  }
  return out;
}

std::string curve_csv_path(const std::string& path, const Curve& curve, std::size_t index,
                           std::size_t count) {
  if (count == 1) return path;
  const std::filesystem::path p(path);
  const std::size_t width = std::to_string(count - 1).size();
  std::string number = std::to_string(index);
  number.insert(0, width - number.size(), '0');
  const std::string file = p.stem().string() + "_" + number + "_" + slug(curve.name) + p.extension().string();
  return (p.parent_path() / file).string();
}

std::vector<std::string> emit_csv(const CurveSet& curves, const std::string& path) {
  std::vector<std::string> written;
  for (std::size_t k = 0; k < curves.curves.size(); ++k) {
    const std::string target = curve_csv_path(path, curves.curves[k], k, curves.curves.size());
    write_text_file(target, format_csv(curves.curves[k]));
    written.push_back(target);
  }
  return written;
}

std::string format_svg(const CurveSet& curves) {
  if (curves.curves.empty()) throw Error(ErrorCode::TooFewPoints, "no curves to plot");
  for (const auto& c : curves.curves) {
    if (c.points.size() < 2) {
      throw Error(ErrorCode::TooFewPoints, "curve \"" + c.name + "\" has fewer than 2 points");
    }
  }

  constexpr double kWidth = 800, kHeight = 600;
  constexpr double kLeft = 90, kRight = 220, kTop = 40, kBottom = 70;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  std::vector<std::string> x_units, y_units;
  for (const auto& c : curves.curves) {
    for (const auto& p : c.points) {
      x_lo = std::min(x_lo, p.abscissa);
      x_hi = std::max(x_hi, p.abscissa);
      y_lo = std::min(y_lo, p.value);
      y_hi = std::max(y_hi, p.value);
    }
    if (std::find(x_units.begin(), x_units.end(), c.abscissa_unit) == x_units.end()) x_units.push_back(c.abscissa_unit);
    if (std::find(y_units.begin(), y_units.end(), c.value_unit) == y_units.end()) y_units.push_back(c.value_unit);
  }
  std::tie(x_lo, x_hi) = padded_range(x_lo, x_hi);
  std::tie(y_lo, y_hi) = padded_range(y_lo, y_hi);
  auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto sy = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& u : v) s += (s.empty() ? "" : ", ") + u;
    return s;
  };
  auto coord = [](double v) { return format_number(v, 7); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n"
      << "<g font-family=\"sans-serif\" font-size=\"12\">\n";

  // Axes box.
  svg << "<rect x=\"" << coord(kLeft) << "\" y=\"" << coord(kTop) << "\" width=\"" << coord(plot_w)
      << "\" height=\"" << coord(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : nice_ticks(x_lo, x_hi)) {
    const double x = sx(t);
    svg << "<line x1=\"" << coord(x) << "\" y1=\"" << coord(kTop + plot_h) << "\" x2=\"" << coord(x)
        << "\" y2=\"" << coord(kTop + plot_h + 6) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << coord(x) << "\" y=\"" << coord(kTop + plot_h + 20)
        << "\" text-anchor=\"middle\">" << format_number(t, 6) << "</text>\n";
  }
  for (double t : nice_ticks(y_lo, y_hi)) {
    const double y = sy(t);
    svg << "<line x1=\"" << coord(kLeft - 6) << "\" y1=\"" << coord(y) << "\" x2=\"" << coord(kLeft)
        << "\" y2=\"" << coord(y) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << coord(kLeft - 10) << "\" y=\"" << coord(y + 4)
        << "\" text-anchor=\"end\">" << format_number(t, 6) << "</text>\n";
  }
  svg << "<text x=\"" << coord(kLeft + plot_w / 2) << "\" y=\"" << coord(kHeight - 20)
      << "\" text-anchor=\"middle\">abscissa [" << xml_escape(join(x_units)) << "]</text>\n"
      << "<text x=\"20\" y=\"" << coord(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << coord(kTop + plot_h / 2) << ")\">value [" << xml_escape(join(y_units)) << "]</text>\n";

  for (std::size_t k = 0; k < curves.curves.size(); ++k) {
    const auto& c = curves.curves[k];
    const char* color = kPalette[k % std::size(kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      svg << (i ? " " : "") << coord(sx(c.points[i].abscissa)) << "," << coord(sy(c.points[i].value));
    }
    svg << "\"/>\n";
  }

  // Legend.
  const double lx = kLeft + plot_w + 15;
  for (std::size_t k = 0; k < curves.curves.size(); ++k) {
    const double ly = kTop + 10 + 18.0 * static_cast<double>(k);
    const char* color = kPalette[k % std::size(kPalette)];
    svg << "<g class=\"legend-entry\"><line x1=\"" << coord(lx) << "\" y1=\"" << coord(ly) << "\" x2=\""
        << coord(lx + 20) << "\" y2=\"" << coord(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/><text x=\"" << coord(lx + 26) << "\" y=\"" << coord(ly + 4) << "\">"
        << xml_escape(curves.curves[k].name) << "</text></g>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void emit_svg(const CurveSet& curves, const std::string& path) {
  write_text_file(path, format_svg(curves));
}

}  // namespace qcal
