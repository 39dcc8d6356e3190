#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairbias/dataset.hpp"

namespace fairbias {

/// Per-instance predictions keyed by instance id.
struct Prediction {
    std::vector<InstanceId> ids;
    std::vector<int> labels;
    std::vector<double> scores;  // empty when the producer has no scores

    bool has_scores() const { return !scores.empty(); }
    /// Labels/scores re-aligned to `order`; throws on a missing id.
    Prediction aligned_to(std::span<const InstanceId> order) const;
};

struct MetricReport {
    MaybeReal accuracy;
    MaybeReal balanced_accuracy;
    MaybeReal spd;
    MaybeReal eqod;
    MaybeReal avod;
    MaybeReal eqop;
    MaybeReal fnr_diff;
    MaybeReal fpr_diff;
    MaybeReal bcc;
    MaybeReal gei;

    bool operator==(const MetricReport&) const = default;
};

/// Metric names in report column order.
const std::vector<std::string>& metric_names();
std::vector<MaybeReal> metric_values(const MetricReport& report);
MetricReport report_from_values(const std::vector<MaybeReal>& values);

MaybeReal accuracy(std::span<const int> pred, std::span<const int> truth);
/// (TPR + TNR) / 2; undefined unless truth holds both classes.
MaybeReal balanced_accuracy(std::span<const int> pred, std::span<const int> truth);

/// P(yhat=1 | A=1) - P(yhat=1 | A=0). Takes no truth argument on purpose.
MaybeReal spd(std::span<const int> pred, std::span<const int> groups);

struct OddsMetrics {
    MaybeReal eqod;
    MaybeReal avod;
    MaybeReal eqop;
    MaybeReal fnr_diff;
    MaybeReal fpr_diff;
};

/// Differences are unprivileged minus privileged.
OddsMetrics odds_metrics(std::span<const int> pred, std::span<const int> truth,
                         std::span<const int> groups);

/// k nearest neighbours of every row (self excluded) by Euclidean distance;
/// ties go to the lower instance id. Row-major `points` with `dim` columns.
std::vector<std::vector<std::size_t>> nearest_neighbours(std::span<const double> points,
                                                         std::size_t dim,
                                                         std::span<const InstanceId> ids,
                                                         std::size_t k);

/// Balanced conditioned consistency from precomputed neighbour lists.
MaybeReal bcc(std::span<const int> pred, const std::vector<std::vector<std::size_t>>& neighbours,
              double delta = 0.8);
/// Balanced conditioned consistency on an encoding without A.
MaybeReal bcc(std::span<const int> pred, const EncodedMatrix& features, std::size_t k = 5,
              double delta = 0.8);

/// Generalized entropy index over benefits b = yhat - y + 1.
MaybeReal gei(std::span<const int> pred, std::span<const int> truth, double alpha = 2.0);

/// Everything for one evaluated set. `neighbours` may be empty to skip BCC.
MetricReport compute_report(std::span<const int> pred, std::span<const int> truth,
                            std::span<const int> groups,
                            const std::vector<std::vector<std::size_t>>& neighbours);

struct BccSettings {
    std::size_t k = 5;
    double delta = 0.8;
};

/// Fair report on `fair_view`, biased report on `biased_view` (same fold;
/// label-swapped for label bias, a row subset for selection bias). BCC uses
/// `encoder`, which must exclude A.
std::pair<MetricReport, MetricReport> evaluate(const Prediction& pred, const Dataset& fair_view,
                                               const Dataset& biased_view, const Encoder& encoder,
                                               const BccSettings& bcc_settings = {});

/// Single-view evaluation used by evaluate().
MetricReport evaluate_view(const Prediction& pred, const Dataset& view, const Encoder& encoder,
                           const BccSettings& bcc_settings = {});

}  // namespace fairbias
