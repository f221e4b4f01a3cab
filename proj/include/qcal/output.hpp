#pragma once

#include <string>
#include <vector>

#include "qcal/sweep.hpp"

namespace qcal {

/// `abscissa_<unit>,value_<unit>,error_estimate` then one row per point,
/// 12 significant digits, LF line endings.
std::string format_csv(const Curve& curve);

/// File written for curve `index` of `count` when emitting to `path`: the
/// path itself for a single curve, else `<stem>_<index>_<slug><ext>`.
std::string curve_csv_path(const std::string& path, const Curve& curve, std::size_t index,
                           std::size_t count);

/// Writes one CSV file per curve; returns the paths written. Error(IoError) on failure.
std::vector<std::string> emit_csv(const CurveSet& curves, const std::string& path);

/// Standalone SVG 1.1 plot (viewBox 800x600) with axes, ticks, one polyline
/// per curve and a legend. Error(TooFewPoints) unless there is >= 1 curve and
/// every curve has >= 2 points.
std::string format_svg(const CurveSet& curves);
void emit_svg(const CurveSet& curves, const std::string& path);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace qcal
