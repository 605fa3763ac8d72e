#pragma once

#include <string>

#include "qcod/power.hpp"
#include "qcod/widths.hpp"

namespace qcod::report {

/// CSV with header `k,d_k`, one row per width.
std::string widths_csv(const WidthProfile& profile);

/// CSV with header `norm,power,stderr`, 6 significant digits.
std::string power_curve_csv(const PowerCurve& curve);

/// Minimal single-chart SVG: one polyline over [0, x_max] x [0, 1] with axis
/// ticks and a title.
std::string power_curve_svg(const PowerCurve& curve, const std::string& title);

/// Writes atomically (temp file + rename).
void write_file(const std::string& path, const std::string& contents);

} // namespace qcod::report
