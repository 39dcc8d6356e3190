#include "fairbias/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <thread>
#include <tuple>

#include "fairbias/log.hpp"
#include "fairbias/random.hpp"

namespace fairbias {

std::vector<Method> all_methods() {
    return {Method::reweighing, Method::massaging, Method::ftu,      Method::eop,
            Method::ceo,        Method::roc_spd,   Method::roc_eqop, Method::roc_avod};
}

void ExperimentPlan::validate() const {
    if (datasets.empty()) throw ConfigError("plan has no datasets");
    if (kinds.empty()) throw ConfigError("plan has no bias kinds");
    if (levels.empty()) throw ConfigError("plan has no intensity levels");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i] >= 0.0 && levels[i] <= 1.0)) throw ConfigError("levels must lie in [0, 1]");
        if (i > 0 && !(levels[i] > levels[i - 1])) throw ConfigError("levels must be strictly ascending");
    }
    if (folds_label < 3 || folds_selection < 3) throw ConfigError("fold counts must be at least 3");
    if (jobs == 0) throw ConfigError("jobs must be at least 1");
    if (train_exclude && *train_exclude != 0 && *train_exclude != 1)
        throw ConfigError("excluded group must be 0 or 1");
    std::set<std::string> names;
    for (const auto& d : datasets)
        if (!names.insert(d.data.name).second) throw ConfigError("duplicate dataset name " + d.data.name);
    learner_params.forest.validate();
    learner_params.tree.validate();
    mitigation.validate();
}

std::size_t ExperimentPlan::n_folds(BiasKind kind) const {
    return is_selection(kind) ? folds_selection : folds_label;
}

std::vector<Method> ExperimentPlan::method_list() const {
    std::vector<Method> out{Method::unmitigated};
    for (Method m : methods)
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    return out;
}

std::uint64_t fold_seed(std::uint64_t master, const std::string& dataset) {
    return derive_seed(master, hash_string(dataset), hash_string("folds"));
}

std::uint64_t bias_seed(std::uint64_t master, const std::string& dataset, BiasKind kind, double level) {
    const std::uint64_t base = derive_seed(master, hash_string(dataset), hash_string(to_string(kind)));
    // Label noise is drawn afresh per level; selection shares one priority order.
    return kind == BiasKind::label ? derive_seed(base, hash_real(level)) : base;
}

std::uint64_t learner_seed(std::uint64_t master, const std::string& dataset, BiasKind kind,
                           double level, std::size_t fold) {
    return derive_seed(master, hash_string(dataset), hash_string(to_string(kind)), hash_real(level),
                       static_cast<std::uint64_t>(fold), hash_string("learner"));
}

std::uint64_t method_seed(std::uint64_t learner, Method method) {
    return derive_seed(learner, hash_string(to_string(method)));
}

namespace {

IdSet to_set(const std::vector<InstanceId>& ids) { return IdSet(ids.begin(), ids.end()); }

struct Task {
    const PlanDataset* dataset;
    BiasKind kind;
    std::size_t level_index;
    std::size_t fold;
    const Dataset* view;  // whole-dataset biased view for (kind, level)
    const FoldPlan* folds;
};

class Notifier {
public:
    explicit Notifier(RunObserver* obs) : obs_(obs) {}
    template <typename F>
    void operator()(F&& f) {
        if (!obs_) return;
        std::lock_guard lock(mu_);
        f(*obs_);
    }

private:
    RunObserver* obs_;
    std::mutex mu_;
};

std::vector<ResultRecord> run_task(const ExperimentPlan& plan, const Task& task, Notifier& notify) {
    const Dataset& fair = task.dataset->data;
    const double level = plan.levels[task.level_index];
    const FoldPlan fp = task.folds->rotated(task.fold);
    const IdSet test_set = to_set(fp.fold_ids(fp.test_fold));
    const IdSet val_set = to_set(fp.fold_ids(fp.validation_fold));
    const IdSet train_set = to_set(fp.train_ids());

    const Dataset fair_test = fair.keep_ids(test_set);
    const Dataset biased_test = task.view->keep_ids(test_set);
    Dataset train = task.view->keep_ids(train_set);
    const Dataset val = task.view->keep_ids(val_set);
    if (plan.train_exclude) train = exclude_group(train, *plan.train_exclude);

    CellKey key{fair.name, task.kind, level, task.fold, Method::unmitigated};
    notify([&](RunObserver& o) { o.on_test_fold(key, fair_test.ids); });

    std::vector<std::size_t> train_rows(train.size());
    std::iota(train_rows.begin(), train_rows.end(), std::size_t{0});
    const Encoder eval_encoder = Encoder::fit(train, train_rows, false);
    notify([&](RunObserver& o) { o.on_fit(key, "bcc_encoder", eval_encoder.fit_ids()); });

    // Neighbour lists depend on the evaluated rows only, so every method shares them.
    auto neighbours_of = [&](const Dataset& view) -> std::vector<std::vector<std::size_t>> {
        if (view.size() < plan.bcc.k + 1) return {};
        return nearest_neighbours(eval_encoder.transform(view), eval_encoder.width(), view.ids, plan.bcc.k);
    };
    const auto fair_nb = neighbours_of(fair_test);
    const auto biased_nb = biased_test.ids == fair_test.ids ? fair_nb : neighbours_of(biased_test);
    auto report = [&](const Prediction& pred, const Dataset& view, const std::vector<std::vector<std::size_t>>& nb) {
        const Prediction aligned = pred.aligned_to(view.ids);
        MetricReport r = compute_report(aligned.labels, view.label, view.sensitive, {});
        if (!nb.empty()) r.bcc = bcc(aligned.labels, nb, plan.bcc.delta);
        return r;
    };

    const std::uint64_t lseed = learner_seed(plan.master_seed, fair.name, task.kind, level, task.fold);
    std::optional<TrainedModel> base_model;
    auto fit = [&](const Dataset& data, const CellKey& k) {
        TrainedModel model = train_model(data, plan.learner, plan.learner_params, lseed);
        notify([&](RunObserver& o) {
            o.on_fit(k, "model", model.fit_ids());
            o.on_model(k, model);
        });
        return model;
    };
    auto unmitigated = [&]() -> const TrainedModel& {
        if (!base_model) base_model = fit(train, key);
        return *base_model;
    };

    auto predict = [](const TrainedModel& model, const Dataset& ds) {
        Prediction p;
        p.ids = ds.ids;
        p.scores = model.predict_scores(ds);
        p.labels.resize(p.scores.size());
        for (std::size_t i = 0; i < p.scores.size(); ++i) p.labels[i] = p.scores[i] >= 0.5 ? 1 : 0;
        return p;
    };

    const std::string learner_name(to_string(plan.learner));
    std::vector<ResultRecord> out;
    for (Method method : plan.method_list()) {
        key.method = method;
        ResultRecord fair_rec{fair.name, learner_name, task.kind, level, method, task.fold,
                              EvalMode::fair, true, {}};
        ResultRecord biased_rec = fair_rec;
        biased_rec.mode = EvalMode::biased;
        try {
            if (plan.force_fail.count(method)) throw MethodFailed("forced failure");
            Prediction test_pred;
            switch (method) {
            case Method::unmitigated:
                test_pred = predict(unmitigated(), fair_test);
                break;
            case Method::reweighing: {
                const ReweighResult rw = reweigh(train);
                notify([&](RunObserver& o) {
                    o.on_fit(key, "reweighing", train.ids);
                    o.on_reweigh(key, rw);
                });
                test_pred = predict(fit(rw.data, key), fair_test);
                break;
            }
            case Method::massaging: {
                const MassageResult ms = massage(train, plan.mitigation.ranker);
                notify([&](RunObserver& o) {
                    o.on_fit(key, "massaging_ranker", train.ids);
                    o.on_massage(key, train, ms);
                });
                // No flips leaves the training data, and so the model, unchanged.
                test_pred = ms.promoted.empty() && ms.demoted.empty()
                                ? predict(unmitigated(), fair_test)
                                : predict(fit(ms.data, key), fair_test);
                break;
            }
            case Method::ftu:
                test_pred = predict(fit(ftu(train), key), fair_test);
                break;
            default: {
                const TrainedModel& model = unmitigated();
                const Prediction val_pred = predict(model, val);
                PostProcessor post;
                if (method == Method::eop)
                    post = fit_eop(val_pred.labels, val.label, val.sensitive);
                else if (method == Method::ceo)
                    post = fit_ceo(val_pred.scores, val.label, val.sensitive, plan.mitigation.ceo_cost);
                else
                    post = fit_roc(val_pred.scores, val.label, val.sensitive, roc_criterion_for(method),
                                   plan.mitigation.roc);
                notify([&](RunObserver& o) {
                    o.on_fit(key, "postprocessor", val.ids);
                    o.on_postprocessor(key, post, val, val_pred);
                });
                test_pred = post.apply(predict(model, fair_test), fair_test.sensitive,
                                       method_seed(lseed, method));
                break;
            }
            }
            fair_rec.metrics = report(test_pred, fair_test, fair_nb);
            biased_rec.metrics = report(test_pred, biased_test, biased_nb);
        } catch (const MethodFailed& e) {
            fair_rec.ok = biased_rec.ok = false;
            fair_rec.metrics = biased_rec.metrics = MetricReport{};
            log::info("method failed: ", fair.name, " ", to_string(task.kind), " level ", level,
                      " fold ", task.fold, " ", to_string(method), ": ", e.what());
            notify([&](RunObserver& o) { o.on_failure(key, e.what()); });
        }
        out.push_back(std::move(fair_rec));
        out.push_back(std::move(biased_rec));
    }
    return out;
}

}  // namespace

std::vector<ResultRecord> run(const ExperimentPlan& plan, RunObserver* observer) {
    plan.validate();
    Notifier notify(observer);

    // Biased views are built once over the whole dataset and sliced per fold,
    // which keeps one removal order across train, validation and test.
    std::vector<std::unique_ptr<Dataset>> views;
    std::vector<std::unique_ptr<FoldPlan>> fold_plans;
    std::vector<Task> tasks;
    for (const PlanDataset& d : plan.datasets) {
        std::map<std::size_t, const FoldPlan*> by_count;
        for (BiasKind kind : plan.kinds) {
            const std::size_t k = plan.n_folds(kind);
            if (!by_count.count(k)) {
                fold_plans.push_back(std::make_unique<FoldPlan>(
                    make_fold_plan(d.data, k, fold_seed(plan.master_seed, d.data.name), plan.stratify)));
                by_count[k] = fold_plans.back().get();
            }
            for (std::size_t li = 0; li < plan.levels.size(); ++li) {
                BiasSpec spec{kind, plan.levels[li], kind == BiasKind::label ? d.noise : 0.0,
                              bias_seed(plan.master_seed, d.data.name, kind, plan.levels[li])};
                views.push_back(std::make_unique<Dataset>(biased_view(d.data, spec)));
                for (std::size_t f = 0; f < k; ++f)
                    tasks.push_back({&d, kind, li, f, views.back().get(), by_count[k]});
            }
        }
    }

    std::vector<std::vector<ResultRecord>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mu;
    std::exception_ptr first_error;
    auto worker = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) return;
            try {
                results[t] = run_task(plan, tasks[t], notify);
                log::debug("cell done: ", tasks[t].dataset->data.name, " ", to_string(tasks[t].kind),
                           " level ", plan.levels[tasks[t].level_index], " fold ", tasks[t].fold);
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                next = tasks.size();
            }
        }
    };
    const unsigned n_threads = std::min<unsigned>(plan.jobs, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    // Tasks are fold-major inside a level; records are ordered (level, fold, method, mode).
    std::vector<ResultRecord> out;
    for (auto& r : results)
        for (auto& rec : r) out.push_back(std::move(rec));
    return out;
}

// ---- aggregation ----------------------------------------------------------

std::vector<AggregateRecord> aggregate(const std::vector<ResultRecord>& records) {
    using Key = std::tuple<std::string, std::string, int, double, int, int>;
    std::map<Key, std::size_t> index;
    std::vector<AggregateRecord> out;
    std::vector<std::vector<const ResultRecord*>> members;
    for (const ResultRecord& r : records) {
        const Key k{r.dataset, r.learner, static_cast<int>(r.kind), r.level, static_cast<int>(r.method),
                    static_cast<int>(r.mode)};
        auto [it, inserted] = index.emplace(k, out.size());
        if (inserted) {
            AggregateRecord a;
            a.dataset = r.dataset;
            a.learner = r.learner;
            a.kind = r.kind;
            a.level = r.level;
            a.method = r.method;
            a.mode = r.mode;
            out.push_back(std::move(a));
            members.emplace_back();
        }
        members[it->second].push_back(&r);
    }
    const std::size_t n_metrics = metric_names().size();
    for (std::size_t g = 0; g < out.size(); ++g) {
        AggregateRecord& a = out[g];
        a.n_folds = members[g].size();
        std::vector<std::vector<double>> values(n_metrics);
        for (const ResultRecord* r : members[g]) {
            if (!r->ok) {
                ++a.fail_count;
                continue;
            }
            const auto v = metric_values(r->metrics);
            for (std::size_t m = 0; m < n_metrics; ++m)
                if (v[m]) values[m].push_back(*v[m]);
        }
        const std::size_t ok = a.n_folds - a.fail_count;
        a.failed = ok == 0 || 2 * a.fail_count > a.n_folds;
        a.mean.assign(n_metrics, std::nullopt);
        a.sd.assign(n_metrics, std::nullopt);
        for (std::size_t m = 0; m < n_metrics; ++m) {
            const auto& v = values[m];
            if (v.empty()) continue;
            double mean = 0.0;
            for (double x : v) mean += x;
            mean /= static_cast<double>(v.size());
            double var = 0.0;
            for (double x : v) var += (x - mean) * (x - mean);
            var /= static_cast<double>(v.size());
            a.mean[m] = mean;
            a.sd[m] = std::sqrt(var);
        }
    }
    return out;
}

std::vector<ScatterPoint> diagonal_scatter(const std::vector<AggregateRecord>& aggregates) {
    using Key = std::tuple<std::string, std::string, int, double, int>;
    std::map<Key, const AggregateRecord*> biased;
    for (const auto& a : aggregates)
        if (a.mode == EvalMode::biased)
            biased[{a.dataset, a.learner, static_cast<int>(a.kind), a.level, static_cast<int>(a.method)}] = &a;
    std::vector<ScatterPoint> out;
    const auto& names = metric_names();
    for (const auto& a : aggregates) {
        if (a.mode != EvalMode::fair || a.failed) continue;
        auto it = biased.find({a.dataset, a.learner, static_cast<int>(a.kind), a.level, static_cast<int>(a.method)});
        if (it == biased.end() || it->second->failed) continue;
        for (std::size_t m = 0; m < names.size(); ++m) {
            const MaybeReal f = a.mean[m], b = it->second->mean[m];
            if (!f || !b) continue;
            out.push_back({a.dataset, a.learner, a.kind, a.level, a.method, names[m], *f, *b,
                           std::abs(*f) >= 1.0 || std::abs(*b) >= 1.0});
        }
    }
    return out;
}

}  // namespace fairbias
