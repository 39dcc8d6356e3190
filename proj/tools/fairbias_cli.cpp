#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <tuple>

#include "fairbias/cache.hpp"
#include "fairbias/config.hpp"
#include "fairbias/ingestion.hpp"
#include "fairbias/log.hpp"
#include "fairbias/plots.hpp"
#include "fairbias/random.hpp"
#include "fairbias/records.hpp"

namespace fs = std::filesystem;
using namespace fairbias;

namespace {

constexpr int kConfigError = 2;
constexpr int kMissingInput = 3;

// Lines are buffered per (dataset, kind, level, fold) task and written in plan
// order, so the log does not depend on --jobs.
class AuditLog : public RunObserver {
public:
    AuditLog(const std::string& path, const ExperimentPlan& plan) : path_(path) {
        for (std::size_t i = 0; i < plan.datasets.size(); ++i) dataset_rank_[plan.datasets[i].data.name] = i;
    }

    void on_fit(const CellKey& k, const std::string& component, std::span<const InstanceId> ids) override {
        std::uint64_t h = 0;
        for (InstanceId id : ids) h ^= mix64(id);  // order-free fingerprint
        line(k) << " fit component=" << component << " n_ids=" << ids.size() << " id_hash=" << h << '\n';
    }
    void on_reweigh(const CellKey& k, const ReweighResult& r) override {
        line(k) << " reweighing w00=" << format_real(r.table[0][0]) << " w01=" << format_real(r.table[0][1])
                << " w10=" << format_real(r.table[1][0]) << " w11=" << format_real(r.table[1][1]) << '\n';
    }
    void on_massage(const CellKey& k, const Dataset&, const MassageResult& m) override {
        line(k) << " massaging requested=" << m.flips_requested << " saturated=" << m.saturated
                << " promoted=" << join(m.promoted) << " demoted=" << join(m.demoted) << '\n';
    }
    void on_postprocessor(const CellKey& k, const PostProcessor& p, const Dataset&, const Prediction&) override {
        line(k) << ' ' << p.describe() << '\n';
    }
    void on_failure(const CellKey& k, const std::string& what) override {
        line(k) << " method_failed reason=\"" << what << "\"\n";
    }

    void write() const {
        std::ofstream out(path_);
        if (!out) throw InputError("cannot write " + path_);
        for (const auto& [key, text] : tasks_) out << text.str();
    }

private:
    using TaskKey = std::tuple<std::size_t, int, double, std::size_t>;

    static std::string join(const std::vector<InstanceId>& ids) {
        std::string s;
        for (InstanceId id : ids) s += (s.empty() ? "" : ";") + std::to_string(id);
        return s.empty() ? "-" : s;
    }
    std::ostream& line(const CellKey& k) {
        const TaskKey key{dataset_rank_.at(k.dataset), static_cast<int>(k.kind), k.level, k.fold};
        return tasks_[key] << k.dataset << ' ' << to_string(k.kind) << " level=" << format_real(k.level)
                           << " fold=" << k.fold << " method=" << to_string(k.method);
    }

    std::string path_;
    std::map<std::string, std::size_t> dataset_rank_;
    std::map<TaskKey, std::ostringstream> tasks_;
};

nlohmann::json plan_metadata(const ExperimentPlan& plan, const RunConfig& cfg) {
    using nlohmann::json;
    json j;
    j["master_seed"] = plan.master_seed;
    json ds = json::array();
    for (const auto& d : plan.datasets) {
        json e{{"name", d.data.name}, {"rows", d.data.size()}, {"label_noise", d.noise},
               {"fold_seed", fold_seed(plan.master_seed, d.data.name)}};
        json kinds = json::object();
        for (BiasKind k : plan.kinds) {
            json levels = json::object();
            for (double l : plan.levels) levels[format_real(l)] = bias_seed(plan.master_seed, d.data.name, k, l);
            kinds[std::string(to_string(k))] = levels;
        }
        e["bias_seeds"] = kinds;
        ds.push_back(e);
    }
    j["datasets"] = ds;
    for (BiasKind k : plan.kinds) j["kinds"].push_back(std::string(to_string(k)));
    j["levels"] = plan.levels;
    for (Method m : plan.method_list()) j["methods"].push_back(std::string(to_string(m)));
    for (EvalMode m : cfg.eval_modes) j["eval_modes"].push_back(std::string(to_string(m)));
    j["folds"] = {{"label", plan.folds_label}, {"selection", plan.folds_selection},
                  {"stratified_by", plan.stratify ? "sensitive,label" : "none"},
                  {"rotation", "test = fold i, validation = fold (i + 1) mod k, rest = train"}};
    j["learner"] = std::string(to_string(plan.learner));
    const auto& f = plan.learner_params.forest;
    j["forest"] = {{"n_trees", f.n_trees}, {"bootstrap", f.bootstrap}, {"max_depth", f.tree.max_depth},
                   {"min_samples_split", f.tree.min_samples_split}, {"min_samples_leaf", f.tree.min_samples_leaf},
                   {"max_features", f.tree.max_features == 0 ? json("floor(sqrt(p))") : json(f.tree.max_features)},
                   {"bootstrap_sampling", "weight-proportional with replacement"}};
    const auto& t = plan.learner_params.tree;
    j["tree"] = {{"max_depth", t.max_depth}, {"min_samples_split", t.min_samples_split},
                 {"min_samples_leaf", t.min_samples_leaf}};
    const auto& lg = plan.learner_params.logistic;
    j["logistic"] = {{"l2", lg.l2}, {"max_iter", lg.max_iter}, {"tol", lg.tol}};
    const auto& mit = plan.mitigation;
    j["mitigation"] = {
        {"roc", {{"lb", mit.roc.lb}, {"ub", mit.roc.ub}, {"thresholds", mit.roc.n_thresholds},
                 {"margins", mit.roc.n_margins}, {"threshold_range", "0.01..0.99"},
                 {"infeasible_fallback", "cell with smallest |criterion|"}}},
        {"ceo", {{"cost", std::string(to_string(mit.ceo_cost))}}},
        {"massaging", {{"ranker", "logistic on encoded train with A"}, {"ranker_l2", mit.ranker.l2},
                       {"flip_count", "round-to-nearest, no-op when SPD >= 0"}}},
        {"postprocessing_fit", "biased validation view"}};
    j["selection"] = {{"self_selection_weight", "linear: S_max - S + 0.01 * scale"},
                      {"removal_count", "floor(p_u * cell size)"},
                      {"views", "built once per (kind, level) over the whole dataset, sliced per fold"}};
    j["bcc"] = {{"k", plan.bcc.k}, {"delta", plan.bcc.delta},
                {"encoding", "standardized numerics, one-hot categoricals, no sensitive attribute, fit on train view"}};
    j["train_exclude"] = plan.train_exclude ? json(*plan.train_exclude == 1 ? "unprivileged" : "privileged") : json(nullptr);
    std::vector<std::string> forced;
    for (Method m : plan.force_fail) forced.emplace_back(to_string(m));
    j["force_fail"] = forced;
    return j;
}

int cmd_ingest(const std::string& student, const std::string& oulad, const std::string& out_dir,
               std::uint64_t seed) {
    if (student.empty() && oulad.empty()) throw ConfigError("ingest needs --student and/or --oulad");
    fs::create_directories(out_dir);
    std::vector<Dataset> sets;
    if (!student.empty()) {
        Dataset s = load_student(student);
        sets.push_back(make_student_balanced(s, seed));
        sets.insert(sets.begin(), std::move(s));
    }
    if (!oulad.empty()) {
        const OuladFiles files = OuladFiles::in_directory(oulad);
        for (const char* module : {"FFF", "BBB"}) {
            Dataset d = load_oulad(files, module);
            Dataset c = make_complex_variant(d);
            sets.push_back(std::move(d));
            sets.push_back(std::move(c));
        }
    }
    std::ofstream summary((fs::path(out_dir) / "summary.csv").string());
    summary << summary_header() << '\n';
    std::cout << summary_header() << '\n';
    for (const Dataset& d : sets) {
        write_cache(d, (fs::path(out_dir) / (d.name + ".fbds")).string());
        const std::string row = summary_row(summarize(d));
        summary << row << '\n';
        std::cout << row << '\n';
    }
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, std::optional<std::uint64_t> seed,
            std::optional<unsigned> jobs) {
    RunConfig cfg = load_run_config(config_path);
    if (seed) cfg.plan.master_seed = *seed;
    if (jobs) cfg.plan.jobs = *jobs;
    const ExperimentPlan plan = materialize(cfg);
    fs::create_directories(out_dir);

    AuditLog audit((fs::path(out_dir) / "audit.log").string(), plan);
    std::vector<ResultRecord> records = run(plan, &audit);
    audit.write();
    std::erase_if(records, [&](const ResultRecord& r) {
        return std::find(cfg.eval_modes.begin(), cfg.eval_modes.end(), r.mode) == cfg.eval_modes.end();
    });
    const auto aggregates = aggregate(records);
    {
        std::ofstream out((fs::path(out_dir) / "records.csv").string());
        write_records(out, records);
    }
    {
        std::ofstream out((fs::path(out_dir) / "aggregates.csv").string());
        write_aggregates(out, aggregates);
    }
    {
        std::ofstream out((fs::path(out_dir) / "scatter.csv").string());
        write_scatter(out, diagonal_scatter(aggregates));
    }
    {
        std::ofstream out((fs::path(out_dir) / "run_metadata.json").string());
        out << plan_metadata(plan, cfg).dump(2) << '\n';
    }
    std::size_t failed = 0;
    for (const auto& r : records) failed += !r.ok;
    std::cout << records.size() << " records (" << failed << " method_failed), " << aggregates.size()
              << " aggregates written to " << out_dir << '\n';
    return 0;
}

int cmd_plot(const std::string& aggregates_path, const std::string& family, const std::string& out_dir,
             const std::vector<std::string>& metrics) {
    const auto aggregates = read_aggregates_file(aggregates_path);
    const auto plots = build_plots(aggregates, parse_plot_family(family), metrics);
    if (plots.empty()) {
        std::cerr << "error: nothing to plot for family " << family << '\n';
        return kMissingInput;
    }
    for (const auto& path : write_plots(plots, out_dir)) std::cout << path << '\n';
    return 0;
}

int cmd_summarize(const std::vector<std::string>& caches) {
    std::cout << summary_header() << '\n';
    for (const auto& path : caches) std::cout << summary_row(summarize(read_cache(path))) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bias injection and fairness mitigation experiments"};
    app.require_subcommand(1);
    std::string log_level = "warn";
    app.add_option("--log-level", log_level, "debug, info, warn or error");

    auto* ingest = app.add_subcommand("ingest", "Load source files, write dataset caches and a summary");
    std::string student, oulad, out = "out";
    std::uint64_t seed = 1;
    ingest->add_option("--student", student, "student-por.csv");
    ingest->add_option("--oulad", oulad, "Directory holding the OULAD CSV files");
    ingest->add_option("--out", out, "Output directory");
    ingest->add_option("--seed", seed, "Seed for the balanced variant");

    auto* runc = app.add_subcommand("run", "Run an experiment plan");
    std::string config;
    std::optional<std::uint64_t> run_seed;
    std::optional<unsigned> jobs;
    runc->add_option("--config", config, "Run configuration file")->required();
    runc->add_option("--out", out, "Output directory");
    runc->add_option("--seed", run_seed, "Override the master seed");
    runc->add_option("--jobs", jobs, "Worker threads");

    auto* plot = app.add_subcommand("plot", "Draw SVG charts from an aggregates file");
    std::string aggregates, family = "comparison";
    std::vector<std::string> metrics;
    plot->add_option("--aggregates", aggregates, "aggregates.csv")->required();
    plot->add_option("--family", family, "impact, comparison or scatter");
    plot->add_option("--metric", metrics, "Restrict to these metrics");
    plot->add_option("--out", out, "Output directory");

    auto* summ = app.add_subcommand("summarize", "Print dataset characteristics of caches");
    std::vector<std::string> caches;
    summ->add_option("caches", caches, "Cache files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (log_level == "debug") log::set_level(log::Level::debug);
        else if (log_level == "info") log::set_level(log::Level::info);
        else if (log_level == "warn") log::set_level(log::Level::warn);
        else if (log_level == "error") log::set_level(log::Level::error);
        else throw ConfigError("unknown log level " + log_level);

        if (*ingest) return cmd_ingest(student, oulad, out, seed);
        if (*runc) return cmd_run(config, out, run_seed, jobs);
        if (*plot) return cmd_plot(aggregates, family, out, metrics);
        if (*summ) return cmd_summarize(caches);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InputError& e) {
        std::cerr << "missing input: " << e.what() << '\n';
        return kMissingInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
