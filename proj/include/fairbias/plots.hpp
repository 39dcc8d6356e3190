#pragma once

#include <string>
#include <vector>

#include "fairbias/pipeline.hpp"
#include "fairbias/svg.hpp"

namespace fairbias {

enum class PlotFamily { impact, comparison, scatter };

PlotFamily parse_plot_family(const std::string& text);
std::string_view to_string(PlotFamily family);

struct PlotFile {
    std::string name;  // file name, no directory
    svg::Chart chart;
};

/// One chart per (dataset, kind, metric), built from aggregates only.
/// impact: unmitigated fair and biased curves against level.
/// comparison: fair-evaluation curve per method, dashed fair baseline from
///   the unmitigated level-0 cell, crosses on failed cells.
/// scatter: fair vs biased means with the x = y diagonal.
std::vector<PlotFile> build_plots(const std::vector<AggregateRecord>& aggregates, PlotFamily family,
                                  const std::vector<std::string>& metrics = {});

/// Writes every chart as SVG into `out_dir`; returns written paths.
std::vector<std::string> write_plots(const std::vector<PlotFile>& plots, const std::string& out_dir);

}  // namespace fairbias
