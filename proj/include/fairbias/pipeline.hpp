#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fairbias/bias.hpp"
#include "fairbias/dataset.hpp"
#include "fairbias/learners.hpp"
#include "fairbias/metrics.hpp"
#include "fairbias/mitigation.hpp"

namespace fairbias {

struct PlanDataset {
    Dataset data;
    double noise = 0.1;  // beta_n for label bias
};

struct ExperimentPlan {
    std::vector<PlanDataset> datasets;
    std::vector<BiasKind> kinds{BiasKind::label};
    std::vector<double> levels{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::size_t folds_label = 10;
    std::size_t folds_selection = 5;
    bool stratify = true;
    LearnerKind learner = LearnerKind::forest;
    LearnerParams learner_params;
    /// Mitigation methods; unmitigated is always run whether listed or not.
    std::vector<Method> methods;
    MitigationSpec mitigation;
    BccSettings bcc;
    std::uint64_t master_seed = 1;
    /// Remove this group (1 = unprivileged) from every training view.
    std::optional<int> train_exclude;
    unsigned jobs = 1;
    /// Test hook: these methods fail on every cell.
    std::set<Method> force_fail;

    void validate() const;
    std::size_t n_folds(BiasKind kind) const;
    /// unmitigated first, then the configured methods in their given order.
    std::vector<Method> method_list() const;
};

/// The eight mitigation methods.
std::vector<Method> all_methods();

struct ResultRecord {
    std::string dataset;
    std::string learner;
    BiasKind kind = BiasKind::label;
    double level = 0.0;
    Method method = Method::unmitigated;
    std::size_t fold = 0;
    EvalMode mode = EvalMode::fair;
    bool ok = true;
    MetricReport metrics;  // all undefined when !ok

    bool operator==(const ResultRecord&) const = default;
};

struct CellKey {
    std::string dataset;
    BiasKind kind = BiasKind::label;
    double level = 0.0;
    std::size_t fold = 0;
    Method method = Method::unmitigated;
};

/// Hooks for audit logs and tests. Calls are serialized by the runner.
class RunObserver {
public:
    virtual ~RunObserver() = default;
    /// Held-out test ids of a (dataset, kind, level, fold) cell.
    virtual void on_test_fold(const CellKey&, std::span<const InstanceId>) {}
    /// A fitted object (`component`) and the ids it learned from.
    virtual void on_fit(const CellKey&, const std::string&, std::span<const InstanceId>) {}
    virtual void on_reweigh(const CellKey&, const ReweighResult&) {}
    virtual void on_massage(const CellKey&, const Dataset&, const MassageResult&) {}
    /// Post-processor with the validation view and base predictions it was fit on.
    virtual void on_postprocessor(const CellKey&, const PostProcessor&, const Dataset&, const Prediction&) {}
    virtual void on_model(const CellKey&, const TrainedModel&) {}
    virtual void on_failure(const CellKey&, const std::string&) {}
};

/// Every record of the plan, in (dataset, kind, level, fold, method, mode)
/// order regardless of `jobs`.
std::vector<ResultRecord> run(const ExperimentPlan& plan, RunObserver* observer = nullptr);

/// Seeds used by run(); exposed so tests and metadata can reproduce them.
std::uint64_t fold_seed(std::uint64_t master, const std::string& dataset);
std::uint64_t bias_seed(std::uint64_t master, const std::string& dataset, BiasKind kind, double level);
std::uint64_t learner_seed(std::uint64_t master, const std::string& dataset, BiasKind kind,
                           double level, std::size_t fold);
std::uint64_t method_seed(std::uint64_t learner_seed, Method method);

struct AggregateRecord {
    std::string dataset;
    std::string learner;
    BiasKind kind = BiasKind::label;
    double level = 0.0;
    Method method = Method::unmitigated;
    EvalMode mode = EvalMode::fair;
    std::size_t n_folds = 0;
    std::size_t fail_count = 0;
    /// More than half of the folds failed or none succeeded.
    bool failed = false;
    std::vector<MaybeReal> mean;  // metric_names() order
    std::vector<MaybeReal> sd;    // population standard deviation

    bool operator==(const AggregateRecord&) const = default;
};

/// Groups by every key but the fold, keeping first-seen key order.
std::vector<AggregateRecord> aggregate(const std::vector<ResultRecord>& records);

struct ScatterPoint {
    std::string dataset;
    std::string learner;
    BiasKind kind = BiasKind::label;
    double level = 0.0;
    Method method = Method::unmitigated;
    std::string metric;
    double fair = 0.0;
    double biased = 0.0;
    /// |fair| >= 1 or |biased| >= 1; a plot clipped to [-1, 1] hides it.
    bool clipped = false;
};

/// Pairs fair and biased aggregates of the same cell, per metric. Failed
/// aggregates and undefined means are skipped.
std::vector<ScatterPoint> diagonal_scatter(const std::vector<AggregateRecord>& aggregates);

}  // namespace fairbias
