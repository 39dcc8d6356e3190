#include "fairbias/plots.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <tuple>

namespace fairbias {

PlotFamily parse_plot_family(const std::string& text) {
    if (text == "impact") return PlotFamily::impact;
    if (text == "comparison") return PlotFamily::comparison;
    if (text == "scatter") return PlotFamily::scatter;
    throw ConfigError("unknown plot family '" + text + "' (impact, comparison, scatter)");
}

std::string_view to_string(PlotFamily family) {
    switch (family) {
    case PlotFamily::impact: return "impact";
    case PlotFamily::comparison: return "comparison";
    case PlotFamily::scatter: return "scatter";
    }
    return "?";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t metric_index(const std::string& name) {
    const auto& names = metric_names();
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ConfigError("unknown metric '" + name + "'");
    return static_cast<std::size_t>(it - names.begin());
}

using Panel = std::tuple<std::string, std::string, int>;  // dataset, learner, kind

void add_point(svg::Series& s, double x, const AggregateRecord& a, std::size_t m) {
    s.x.push_back(x);
    s.y.push_back(!a.failed && a.mean[m] ? *a.mean[m] : kNaN);
    s.failed.push_back(a.failed);
}

}  // namespace

std::vector<PlotFile> build_plots(const std::vector<AggregateRecord>& aggregates, PlotFamily family,
                                  const std::vector<std::string>& metrics) {
    std::vector<std::size_t> wanted;
    if (metrics.empty()) {
        for (std::size_t m = 0; m < metric_names().size(); ++m) wanted.push_back(m);
    } else {
        for (const auto& m : metrics) wanted.push_back(metric_index(m));
    }

    std::map<Panel, std::vector<const AggregateRecord*>> panels;
    for (const auto& a : aggregates) panels[{a.dataset, a.learner, static_cast<int>(a.kind)}].push_back(&a);

    std::vector<PlotFile> out;
    for (const auto& [panel, rows] : panels) {
        const auto& [dataset, learner, kind_int] = panel;
        const auto kind = static_cast<BiasKind>(kind_int);
        for (std::size_t m : wanted) {
            const std::string& metric = metric_names()[m];
            PlotFile pf;
            pf.name = std::string(to_string(family)) + "_" + dataset + "_" + learner + "_" +
                      std::string(to_string(kind)) + "_" + metric + ".svg";
            svg::Chart& ch = pf.chart;
            ch.title = dataset + " / " + std::string(to_string(kind)) + " / " + metric;
            if (family == PlotFamily::impact) {
                ch.x_label = "bias level";
                ch.y_label = metric;
                svg::Series fair{"fair eval", svg::palette(0), {}, {}, {}};
                svg::Series biased{"biased eval", svg::palette(1), {}, {}, {}};
                for (const auto* a : rows) {
                    if (a->method != Method::unmitigated) continue;
                    add_point(a->mode == EvalMode::fair ? fair : biased, a->level, *a, m);
                }
                for (auto* s : {&fair, &biased})
                    if (!s->x.empty()) ch.series.push_back(*s);
            } else if (family == PlotFamily::comparison) {
                ch.x_label = "bias level";
                ch.y_label = metric + " (fair eval)";
                std::map<int, svg::Series> by_method;
                for (const auto* a : rows) {
                    if (a->mode != EvalMode::fair) continue;
                    auto& s = by_method[static_cast<int>(a->method)];
                    if (s.name.empty()) {
                        s.name = std::string(to_string(a->method));
                        s.color = svg::palette(static_cast<std::size_t>(a->method));
                    }
                    add_point(s, a->level, *a, m);
                    if (a->method == Method::unmitigated && a->level == 0.0 && !a->failed && a->mean[m]) {
                        ch.has_baseline = true;
                        ch.baseline = *a->mean[m];
                    }
                }
                for (auto& [k, s] : by_method) ch.series.push_back(std::move(s));
            } else {
                ch.x_label = metric + " (fair eval)";
                ch.y_label = metric + " (biased eval)";
                ch.diagonal = true;
                ch.scatter = true;
                std::map<int, svg::Series> by_method;
                for (const auto& p : diagonal_scatter([&] {
                         std::vector<AggregateRecord> subset;
                         for (const auto* a : rows) subset.push_back(*a);
                         return subset;
                     }())) {
                    if (p.metric != metric) continue;
                    auto& s = by_method[static_cast<int>(p.method)];
                    if (s.name.empty()) {
                        s.name = std::string(to_string(p.method));
                        s.color = svg::palette(static_cast<std::size_t>(p.method));
                    }
                    s.x.push_back(p.fair);
                    s.y.push_back(p.biased);
                    s.failed.push_back(false);
                }
                for (auto& [k, s] : by_method) ch.series.push_back(std::move(s));
            }
            if (!ch.series.empty()) out.push_back(std::move(pf));
        }
    }
    return out;
}

std::vector<std::string> write_plots(const std::vector<PlotFile>& plots, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> written;
    for (const auto& p : plots) {
        const auto path = (std::filesystem::path(out_dir) / p.name).string();
        std::ofstream out(path);
        if (!out) throw InputError("cannot write " + path);
        out << svg::render(p.chart);
        written.push_back(path);
    }
    return written;
}

}  // namespace fairbias
