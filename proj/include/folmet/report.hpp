#pragma once

#include <string>

#include "folmet/lab.hpp"

namespace folmet::report {

/// CSV with the experiment columns: re/im coords, n, eta_n, eta_W, gap, in_S,
/// in_E, verdictflags. eta columns carry the exact value when available, the
/// certified lower bound otherwise; the flags column records the method and
/// sandwich width so every verdict stays recomputable.
std::string experiment_csv(const lab::ExperimentReport& rep);

/// Summary block in the structured config syntax.
std::string experiment_summary(const lab::ExperimentReport& rep);

enum class PlotKind { EtaVsN, Scatter };

PlotKind plot_kind_by_name(const std::string& name);

/// Static SVG, one plot per file: eta_n-vs-n curves per point, or a planar
/// scatter of the first complex coordinate pair of a cloud CSV.
std::string experiment_svg(const lab::ExperimentReport& rep, PlotKind kind);

/// Scatter of cloud rows (projection onto the coordinate pair `axis`).
std::string cloud_svg(const geo::SampleCloud& cloud, int axis = 0);

/// Render a report CSV (as written by experiment_csv) back into an SVG.
std::string csv_to_svg(const std::string& csv, PlotKind kind);

} // namespace folmet::report
