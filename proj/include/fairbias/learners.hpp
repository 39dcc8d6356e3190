#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairbias/dataset.hpp"

namespace fairbias {

struct ViewColumn {
    std::string name;
    ColumnKind kind = ColumnKind::numeric;
    std::size_t n_categories = 0;
    bool sensitive = false;

    bool operator==(const ViewColumn&) const = default;
};

/// Raw (unencoded) column-major feature table consumed by the tree learners.
/// Categorical columns hold category codes; A appears as a numeric 0/1
/// column flagged `sensitive` when included.
struct FeatureView {
    std::vector<InstanceId> ids;
    std::vector<ViewColumn> columns;
    std::vector<std::vector<double>> values;

    std::size_t rows() const { return ids.size(); }
    std::size_t cols() const { return columns.size(); }
};

/// A is included iff `include_sensitive`.
FeatureView feature_view(const Dataset& dataset, bool include_sensitive = true);

struct TreeParams {
    int max_depth = 6;
    double min_samples_split = 2;
    double min_samples_leaf = 1;
    /// Candidate columns drawn per split; 0 means every column.
    std::size_t max_features = 0;

    static TreeParams forest_default() { return {6, 10, 10, 0}; }
    void validate() const;
};

struct ForestParams {
    std::size_t n_trees = 100;
    TreeParams tree = TreeParams::forest_default();
    bool bootstrap = true;
    std::uint64_t seed = 0;

    void validate() const;
};

struct LogisticParams {
    double l2 = 1e-4;
    int max_iter = 500;
    double tol = 1e-6;
};

struct LearnerParams {
    ForestParams forest;
    TreeParams tree;
    LogisticParams logistic;
};

struct TreeNode {
    int feature = -1;  // -1 for leaves
    bool categorical = false;
    double threshold = 0.0;  // numeric: x <= threshold goes left; categorical: x == code goes left
    int left = -1;
    int right = -1;
    double value = 0.0;   // weighted positive fraction
    double weight = 0.0;  // training weight reaching the node

    bool operator==(const TreeNode&) const = default;
};

class DecisionTree {
public:
    DecisionTree() = default;
    explicit DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

    double predict(const FeatureView& view, std::size_t row) const;
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    bool uses_column(std::size_t column) const;
    int depth() const;

    bool operator==(const DecisionTree&) const = default;

private:
    std::vector<TreeNode> nodes_;
};

/// Fitted classifier. Scores lie in [0, 1]; labels are score >= 0.5.
class TrainedModel {
public:
    LearnerKind kind() const { return kind_; }
    bool uses_sensitive() const;
    const std::vector<ViewColumn>& columns() const { return columns_; }
    const std::vector<DecisionTree>& trees() const { return trees_; }
    const std::vector<double>& coefficients() const { return coef_; }
    double intercept() const { return intercept_; }
    const std::vector<InstanceId>& fit_ids() const { return fit_ids_; }
    int iterations() const { return iterations_; }

    std::vector<double> predict_scores(const FeatureView& view) const;
    std::vector<double> predict_scores(const EncodedMatrix& matrix) const;
    /// Builds the view (or encoding) this model was fit on.
    std::vector<double> predict_scores(const Dataset& dataset) const;
    std::vector<int> predict_labels(const Dataset& dataset) const;

    /// Nested text records; for debugging, not a stable format.
    std::string serialize() const;

    bool operator==(const TrainedModel& other) const;

private:
    friend TrainedModel fit_tree(const FeatureView&, std::span<const int>, std::span<const double>,
                                 const TreeParams&, std::uint64_t);
    friend TrainedModel fit_forest(const FeatureView&, std::span<const int>, std::span<const double>,
                                   const ForestParams&);
    friend TrainedModel fit_logistic(const EncodedMatrix&, std::span<const int>,
                                     std::span<const double>, const LogisticParams&);
    friend TrainedModel train_model(const Dataset&, LearnerKind, const LearnerParams&,
                                    std::uint64_t);

    void check_view(const FeatureView& view) const;

    LearnerKind kind_ = LearnerKind::tree;
    std::vector<ViewColumn> columns_;
    std::vector<DecisionTree> trees_;
    std::vector<double> coef_;
    double intercept_ = 0.0;
    std::vector<EncodedColumn> encoded_manifest_;
    std::optional<Encoder> encoder_;
    std::vector<InstanceId> fit_ids_;
    int iterations_ = 0;
};

/// Greedy weighted-Gini tree. Rows with weight 0 are ignored. Ties between
/// equally good splits go to the lowest column index, then the lowest threshold.
TrainedModel fit_tree(const FeatureView& view, std::span<const int> labels,
                      std::span<const double> weights, const TreeParams& params, std::uint64_t seed);

/// Random forest whose bootstrap draws rows with probability proportional to
/// their weight, then fits each tree on the drawn multiplicities.
TrainedModel fit_forest(const FeatureView& view, std::span<const int> labels,
                        std::span<const double> weights, const ForestParams& params);

/// Multiplicities of one weighted bootstrap of size n, aligned to the caller's
/// rows. Draws happen in id order so row permutations do not change them.
std::vector<double> bootstrap_counts(std::span<const InstanceId> ids, std::span<const double> weights,
                                     std::uint64_t seed);
/// Seeds of tree `t` of a forest: bootstrap draw and split-candidate draw.
std::uint64_t forest_bootstrap_seed(std::uint64_t forest_seed, std::size_t t);
std::uint64_t forest_tree_seed(std::uint64_t forest_seed, std::size_t t);
/// Candidates per split used by forests: max(1, floor(sqrt(cols))).
std::size_t forest_max_features(std::size_t cols);

/// Weighted mean log-loss plus (l2 / 2) * |beta|^2; intercept is the last
/// entry of `params` and is not penalized. `grad` is resized and filled.
double logistic_objective(const EncodedMatrix& x, std::span<const int> labels,
                          std::span<const double> weights, double l2, std::span<const double> params,
                          std::vector<double>& grad);

/// Gradient descent with Armijo backtracking.
TrainedModel fit_logistic(const EncodedMatrix& x, std::span<const int> labels,
                          std::span<const double> weights, const LogisticParams& params);

/// Fit the learner on `train`, showing it A only when train.sensitive_visible.
TrainedModel train_model(const Dataset& train, LearnerKind kind, const LearnerParams& params,
                         std::uint64_t seed);

/// Fraction of forest trees with at least one split on the sensitive column.
double sensitive_usage(const TrainedModel& model);

}  // namespace fairbias
