#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fairbias/dataset.hpp"
#include "fairbias/learners.hpp"
#include "fairbias/metrics.hpp"

namespace fairbias {

enum class CeoCost { fnr, fpr, weighted };
enum class RocCriterion { spd, eqop, avod };

std::string_view to_string(CeoCost cost);
CeoCost parse_ceo_cost(std::string_view text);

struct RocGrid {
    double lb = -0.05;
    double ub = 0.05;
    std::size_t n_thresholds = 100;
    std::size_t n_margins = 50;

    void validate() const;
    std::vector<double> thresholds() const;
    /// Margins for threshold t: min(t, 1 - t) * (j + 1) / n_margins.
    std::vector<double> margins(double t) const;
};

struct MitigationSpec {
    Method method = Method::unmitigated;
    RocGrid roc;
    CeoCost ceo_cost = CeoCost::weighted;
    LogisticParams ranker;

    void validate() const;
};

// ---- pre-processing -------------------------------------------------------

/// weight(a, y) = P(A=a) P(Y=y) / P(A=a, Y=y) with frequencies weighted by
/// the incoming weights. Throws MethodFailed when a cell is empty.
struct ReweighResult {
    Dataset data;
    /// table[a][y]
    std::array<std::array<double, 2>, 2> table{};
};
ReweighResult reweigh(const Dataset& train);

/// P_w(Y=1 | A=1) - P_w(Y=1 | A=0) using weights as soft counts.
MaybeReal weighted_label_spd(const Dataset& dataset);

/// Flips needed on each side to bring label SPD to zero: round-to-nearest of
/// (p0 - p1) n1 n0 / (n1 + n0), and 0 when SPD >= 0 already.
std::size_t massage_flip_count(const Dataset& train);

struct MassageResult {
    Dataset data;
    std::size_t flips_requested = 0;
    std::vector<InstanceId> promoted;  // unprivileged 0 -> 1
    std::vector<InstanceId> demoted;   // privileged 1 -> 0
    bool saturated = false;
    std::vector<double> ranker_scores;  // aligned to train rows
};
/// Promote the highest-ranked unprivileged negatives and demote the
/// lowest-ranked privileged positives, ranked by a logistic scorer fit on train.
MassageResult massage(const Dataset& train, const LogisticParams& ranker = {});

/// Hide A from the learner; A stays available for evaluation.
Dataset ftu(const Dataset& train);

// ---- post-processing ------------------------------------------------------

struct EopSolution {
    /// mix[a][yhat] = P(output 1 | group a, base prediction yhat)
    std::array<std::array<double, 2>, 2> mix{};
    double expected_accuracy = 0.0;
};

struct CeoSolution {
    CeoCost cost = CeoCost::weighted;
    std::array<double, 2> mix_rate{};   // per group; at most one is non-zero
    std::array<double, 2> base_rate{};  // replacement score per group
    std::array<double, 2> group_cost{};
    std::array<double, 2> trivial_cost{};
};

struct RocSolution {
    RocCriterion criterion = RocCriterion::spd;
    double threshold = 0.5;
    double margin = 0.0;
    bool feasible = false;
    double criterion_value = 0.0;
    MaybeReal balanced_accuracy;
};

/// Fitted on a validation fold; maps (prediction, A) to a label and never
/// looks at other features.
class PostProcessor {
public:
    using Params = std::variant<std::monostate, EopSolution, CeoSolution, RocSolution>;

    PostProcessor() = default;
    PostProcessor(Method method, Params params) : method_(method), params_(std::move(params)) {}

    static PostProcessor identity() { return {}; }

    Method method() const { return method_; }
    const Params& params() const { return params_; }

    /// `groups` is aligned to pred.ids. Randomized processors draw one coin
    /// per instance keyed by (seed, id).
    Prediction apply(const Prediction& pred, std::span<const int> groups, std::uint64_t seed) const;

    /// One-line text record of the fitted parameters.
    std::string describe() const;

private:
    Method method_ = Method::unmitigated;
    Params params_;
};

/// Equalized-odds mixing from binary predictions. Throws MethodFailed when a
/// group lacks truth positives/negatives or predicted positives/negatives.
PostProcessor fit_eop(std::span<const int> val_pred, std::span<const int> val_truth,
                      std::span<const int> groups);

struct GroupRates {
    std::array<double, 2> tpr{};
    std::array<double, 2> fpr{};
};
/// Post-mix TPR/FPR per group under `solution`, in expectation.
GroupRates eop_expected_rates(const EopSolution& solution, std::span<const int> val_pred,
                              std::span<const int> val_truth, std::span<const int> groups);

/// Generalized cost of one group's scores (see CeoSolution).
MaybeReal ceo_group_cost(std::span<const double> scores, std::span<const int> truth, CeoCost cost);

PostProcessor fit_ceo(std::span<const double> val_scores, std::span<const int> val_truth,
                      std::span<const int> groups, CeoCost cost = CeoCost::weighted);

/// Labels produced by the reject-option rule for one (threshold, margin).
std::vector<int> roc_labels(std::span<const double> scores, std::span<const int> groups,
                            double threshold, double margin);
MaybeReal roc_criterion(RocCriterion criterion, std::span<const int> labels,
                        std::span<const int> truth, std::span<const int> groups);

PostProcessor fit_roc(std::span<const double> val_scores, std::span<const int> val_truth,
                      std::span<const int> groups, RocCriterion criterion, const RocGrid& grid = {});

RocCriterion roc_criterion_for(Method method);

}  // namespace fairbias
