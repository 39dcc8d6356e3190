#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairbias/pipeline.hpp"
#include "fairbias/synthetic.hpp"

namespace fairbias {

/// "[section]" headers and "key = value" lines; '#' and ';' start comments.
struct IniFile {
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::map<std::string, std::map<std::string, std::size_t>> lines;  // for messages
};

IniFile parse_ini(std::istream& in);

struct DatasetSource {
    std::string name;
    std::string cache;  // empty for synthetic sources
    std::optional<SyntheticParams> synthetic;
    std::optional<double> noise;
};

struct RunConfig {
    ExperimentPlan plan;  // datasets left empty until materialize()
    std::vector<DatasetSource> sources;
    std::vector<EvalMode> eval_modes{EvalMode::fair, EvalMode::biased};
};

/// Validates every section and key; unknown ones raise ConfigError. Relative
/// cache paths resolve against `base_dir`.
RunConfig parse_run_config(const IniFile& ini, const std::string& base_dir = ".");
RunConfig load_run_config(const std::string& path);

/// Loads caches and builds synthetic sets into plan.datasets.
ExperimentPlan materialize(const RunConfig& config);

std::vector<double> parse_level_list(const std::string& text);

}  // namespace fairbias
