#include "fairbias/config.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>

#include "fairbias/cache.hpp"
#include "fairbias/ingestion.hpp"

namespace fairbias {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    for (char c : text + ",") {
        if (c == ',') {
            item = trim(item);
            if (!item.empty()) out.push_back(item);
            item.clear();
        } else {
            item.push_back(c);
        }
    }
    return out;
}

class Section {
public:
    Section(const IniFile& ini, const std::string& name) : name_(name) {
        auto it = ini.sections.find(name);
        if (it != ini.sections.end()) values_ = &it->second;
        auto lt = ini.lines.find(name);
        if (lt != ini.lines.end()) lines_ = &lt->second;
    }

    std::optional<std::string> get(const std::string& key) {
        used_.insert(key);
        if (!values_) return std::nullopt;
        auto it = values_->find(key);
        if (it == values_->end()) return std::nullopt;
        return it->second;
    }

    template <typename T>
    void read(const std::string& key, T& target) {
        if (auto v = get(key)) target = convert<T>(key, *v);
    }

    template <typename T>
    T convert(const std::string& key, const std::string& text) {
        if constexpr (std::is_same_v<T, bool>) {
            if (text == "true" || text == "yes" || text == "1") return true;
            if (text == "false" || text == "no" || text == "0") return false;
            fail(key, "expected a boolean");
        } else if constexpr (std::is_same_v<T, std::string>) {
            return text;
        } else {
            T v{};
            const char* end = text.data() + text.size();
            auto [p, ec] = std::from_chars(text.data(), end, v);
            if (ec != std::errc() || p != end) fail(key, "expected a number, got '" + text + "'");
            return v;
        }
        return T{};
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        std::string where = "[" + name_ + "] " + key;
        if (lines_) {
            auto it = lines_->find(key);
            if (it != lines_->end()) where = "line " + std::to_string(it->second) + ": " + where;
        }
        throw ConfigError(where + ": " + what);
    }

    /// Rejects keys that nobody asked for.
    void finish() const {
        if (!values_) return;
        for (const auto& [k, v] : *values_)
            if (!used_.count(k)) fail(k, "unknown key");
    }

private:
    std::string name_;
    const std::map<std::string, std::string>* values_ = nullptr;
    const std::map<std::string, std::size_t>* lines_ = nullptr;
    std::set<std::string> used_;
};

}  // namespace

IniFile parse_ini(std::istream& in) {
    IniFile ini;
    std::string line, section;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(number) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError("line " + std::to_string(number) + ": empty section name");
            ini.sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected key = value");
        if (section.empty()) throw ConfigError("line " + std::to_string(number) + ": key outside a section");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("line " + std::to_string(number) + ": empty key");
        if (ini.sections[section].count(key))
            throw ConfigError("line " + std::to_string(number) + ": duplicate key " + key);
        ini.sections[section][key] = trim(line.substr(eq + 1));
        ini.lines[section][key] = number;
    }
    return ini;
}

std::vector<double> parse_level_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) {
        double v = 0;
        const char* end = item.data() + item.size();
        auto [p, ec] = std::from_chars(item.data(), end, v);
        if (ec != std::errc() || p != end) throw ConfigError("bad level '" + item + "'");
        out.push_back(v);
    }
    return out;
}

RunConfig parse_run_config(const IniFile& ini, const std::string& base_dir) {
    static const std::set<std::string> fixed{"run", "forest", "tree", "logistic", "debug"};
    for (const auto& [name, keys] : ini.sections)
        if (!fixed.count(name) && name.rfind("dataset.", 0) != 0 && name.rfind("method.", 0) != 0)
            throw ConfigError("unknown section [" + name + "]");

    RunConfig cfg;
    ExperimentPlan& plan = cfg.plan;
    plan.methods = all_methods();

    Section run(ini, "run");
    std::vector<std::string> dataset_names;
    if (auto v = run.get("datasets")) dataset_names = split_list(*v);
    if (dataset_names.empty()) throw ConfigError("[run] datasets is required");
    if (auto v = run.get("kinds")) {
        plan.kinds.clear();
        for (const auto& k : split_list(*v)) {
            try {
                plan.kinds.push_back(parse_bias_kind(k));
            } catch (const ConfigError& e) {
                run.fail("kinds", e.what());
            }
        }
    }
    if (auto v = run.get("levels")) plan.levels = parse_level_list(*v);
    if (auto v = run.get("methods")) {
        plan.methods.clear();
        if (*v != "all")
            for (const auto& m : split_list(*v)) {
                try {
                    plan.methods.push_back(parse_method(m));
                } catch (const ConfigError& e) {
                    run.fail("methods", e.what());
                }
            }
        else
            plan.methods = all_methods();
    }
    if (auto v = run.get("learner")) {
        try {
            plan.learner = parse_learner(*v);
        } catch (const ConfigError& e) {
            run.fail("learner", e.what());
        }
    }
    run.read("folds_label", plan.folds_label);
    run.read("folds_selection", plan.folds_selection);
    run.read("stratify", plan.stratify);
    run.read("seed", plan.master_seed);
    run.read("jobs", plan.jobs);
    if (auto v = run.get("exclude_group")) {
        if (*v == "unprivileged") plan.train_exclude = 1;
        else if (*v == "privileged") plan.train_exclude = 0;
        else if (*v != "none") run.fail("exclude_group", "expected none, privileged or unprivileged");
    }
    if (auto v = run.get("eval_modes")) {
        cfg.eval_modes.clear();
        for (const auto& m : split_list(*v)) cfg.eval_modes.push_back(parse_eval_mode(m));
        if (cfg.eval_modes.empty()) run.fail("eval_modes", "empty list");
    }
    run.read("bcc_k", plan.bcc.k);
    run.read("bcc_delta", plan.bcc.delta);
    run.finish();

    Section forest(ini, "forest");
    forest.read("n_trees", plan.learner_params.forest.n_trees);
    forest.read("bootstrap", plan.learner_params.forest.bootstrap);
    forest.read("max_depth", plan.learner_params.forest.tree.max_depth);
    forest.read("min_samples_split", plan.learner_params.forest.tree.min_samples_split);
    forest.read("min_samples_leaf", plan.learner_params.forest.tree.min_samples_leaf);
    forest.read("max_features", plan.learner_params.forest.tree.max_features);
    forest.finish();

    Section tree(ini, "tree");
    tree.read("max_depth", plan.learner_params.tree.max_depth);
    tree.read("min_samples_split", plan.learner_params.tree.min_samples_split);
    tree.read("min_samples_leaf", plan.learner_params.tree.min_samples_leaf);
    tree.finish();

    Section logistic(ini, "logistic");
    logistic.read("l2", plan.learner_params.logistic.l2);
    logistic.read("max_iter", plan.learner_params.logistic.max_iter);
    logistic.read("tol", plan.learner_params.logistic.tol);
    logistic.finish();

    for (const auto& [name, keys] : ini.sections) {
        if (name.rfind("method.", 0) != 0) continue;
        const std::string method = name.substr(7);
        Section s(ini, name);
        if (method == "roc") {
            s.read("lb", plan.mitigation.roc.lb);
            s.read("ub", plan.mitigation.roc.ub);
            s.read("thresholds", plan.mitigation.roc.n_thresholds);
            s.read("margins", plan.mitigation.roc.n_margins);
        } else if (method == "ceo") {
            if (auto v = s.get("cost")) {
                try {
                    plan.mitigation.ceo_cost = parse_ceo_cost(*v);
                } catch (const ConfigError& e) {
                    s.fail("cost", e.what());
                }
            }
        } else if (method == "massaging") {
            s.read("ranker_l2", plan.mitigation.ranker.l2);
            s.read("ranker_max_iter", plan.mitigation.ranker.max_iter);
            s.read("ranker_tol", plan.mitigation.ranker.tol);
        } else {
            throw ConfigError("unknown section [" + name + "]: no options for method " + method);
        }
        s.finish();
    }

    Section debug(ini, "debug");
    if (auto v = debug.get("force_fail"))
        for (const auto& m : split_list(*v)) plan.force_fail.insert(parse_method(m));
    debug.finish();

    for (const auto& name : dataset_names) {
        if (!ini.sections.count("dataset." + name))
            throw ConfigError("dataset '" + name + "' has no [dataset." + name + "] section");
    }
    for (const auto& [section, keys] : ini.sections) {
        if (section.rfind("dataset.", 0) != 0) continue;
        const std::string name = section.substr(8);
        if (std::find(dataset_names.begin(), dataset_names.end(), name) == dataset_names.end())
            throw ConfigError("[" + section + "] is not listed in [run] datasets");
    }
    for (const auto& name : dataset_names) {
        Section s(ini, "dataset." + name);
        DatasetSource src;
        src.name = name;
        std::string source = "cache";
        s.read("source", source);
        if (source == "cache") {
            auto path = s.get("cache");
            if (!path) s.fail("cache", "required for cache sources");
            std::filesystem::path p(*path);
            src.cache = p.is_absolute() ? p.string() : (std::filesystem::path(base_dir) / p).string();
        } else if (source == "synthetic") {
            SyntheticParams sp;
            s.read("n", sp.n);
            s.read("features", sp.n_features);
            s.read("unprivileged_share", sp.unprivileged_share);
            s.read("score_noise", sp.score_noise);
            s.read("seed", sp.seed);
            src.synthetic = sp;
        } else {
            s.fail("source", "expected cache or synthetic");
        }
        if (auto v = s.get("noise")) src.noise = s.convert<double>("noise", *v);
        s.finish();
        cfg.sources.push_back(std::move(src));
    }

    // Structural checks short of loading data.
    ExperimentPlan probe = plan;
    probe.datasets.push_back({});
    for (std::size_t i = 1; i < cfg.sources.size(); ++i) {
        probe.datasets.push_back({});
        probe.datasets.back().data.name = std::to_string(i);
    }
    probe.datasets.front().data.name = "0";
    probe.validate();
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config " + path);
    const IniFile ini = parse_ini(in);
    const auto parent = std::filesystem::path(path).parent_path();
    return parse_run_config(ini, parent.empty() ? "." : parent.string());
}

ExperimentPlan materialize(const RunConfig& cfg) {
    ExperimentPlan plan = cfg.plan;
    plan.datasets.clear();
    for (const auto& src : cfg.sources) {
        PlanDataset d;
        if (src.synthetic) d.data = make_wae_dataset(*src.synthetic);
        else d.data = read_cache(src.cache);
        d.data.name = src.name;
        d.noise = src.noise.value_or(default_noise(d.data.name));
        plan.datasets.push_back(std::move(d));
    }
    plan.validate();
    return plan;
}

}  // namespace fairbias
