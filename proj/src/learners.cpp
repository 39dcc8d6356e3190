#include "fairbias/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "fairbias/random.hpp"

namespace fairbias {

namespace {

using RowIndex = std::uint32_t;

std::vector<RowIndex> canonical_order(const FeatureView& view) {
    std::vector<RowIndex> order(view.rows());
    std::iota(order.begin(), order.end(), RowIndex{0});
    std::sort(order.begin(), order.end(),
              [&](RowIndex a, RowIndex b) { return view.ids[a] < view.ids[b]; });
    return order;
}

// Rows of each numeric column ordered by (value, id); empty for categoricals.
std::vector<std::vector<RowIndex>> presort(const FeatureView& view,
                                           const std::vector<RowIndex>& canonical) {
    std::vector<std::vector<RowIndex>> sorted(view.cols());
    for (std::size_t f = 0; f < view.cols(); ++f) {
        if (view.columns[f].kind == ColumnKind::categorical) continue;
        const auto& col = view.values[f];
        auto& order = sorted[f];
        order = canonical;
        std::stable_sort(order.begin(), order.end(),
                         [&](RowIndex a, RowIndex b) { return col[a] < col[b]; });
    }
    return sorted;
}

struct Candidate {
    double gain = 0.0;
    double threshold = 0.0;
    bool valid = false;
    bool nonconstant = false;
};

struct Slot {
    int node = 0;
    double weight = 0.0;
    double positive = 0.0;
    int depth = 0;
    bool splittable = false;
};

DecisionTree build_tree(const FeatureView& view, std::span<const int> y, std::span<const double> w,
                        const std::vector<std::vector<RowIndex>>& sorted,
                        const std::vector<RowIndex>& canonical, const TreeParams& params,
                        std::size_t max_features, std::uint64_t seed) {
    const std::size_t n_cols = view.cols();
    std::vector<TreeNode> nodes;
    std::vector<int> slot_of(view.rows(), -1);

    double total_w = 0.0, total_p = 0.0;
    for (RowIndex r : canonical) {
        if (w[r] <= 0) continue;
        slot_of[r] = 0;
        total_w += w[r];
        total_p += w[r] * y[r];
    }
    if (!(total_w > 0)) throw Error("tree fit: no rows with positive weight");

    TreeNode root;
    root.value = total_p / total_w;
    root.weight = total_w;
    nodes.push_back(root);
    std::vector<Slot> frontier{{0, total_w, total_p, 0, false}};

    std::mt19937_64 rng(seed);
    const bool subsample = max_features > 0 && max_features < n_cols;

    std::vector<double> acc_w, acc_p, last;
    std::vector<char> seen;
    // Rows still in splittable slots; shrinks as leaves close.
    std::vector<RowIndex> live(canonical.begin(), canonical.end());
    std::vector<std::vector<RowIndex>> live_sorted = sorted;

    while (!frontier.empty()) {
        const std::size_t n_slots = frontier.size();
        bool any = false;
        for (Slot& s : frontier) {
            s.splittable = s.depth < params.max_depth && s.weight >= params.min_samples_split &&
                           s.positive > 0 && s.positive < s.weight &&
                           s.weight >= 2 * params.min_samples_leaf;
            any = any || s.splittable;
        }
        if (!any) break;

        std::erase_if(live, [&](RowIndex r) {
            const int js = slot_of[r];
            if (js >= 0 && frontier[static_cast<std::size_t>(js)].splittable) return false;
            slot_of[r] = -1;
            return true;
        });
        for (auto& order : live_sorted)
            std::erase_if(order, [&](RowIndex r) { return slot_of[r] < 0; });

        std::vector<Candidate> best(n_slots * n_cols);
        auto evaluate = [&](std::size_t j, std::size_t f, double lw, double lp, double threshold) {
            const Slot& s = frontier[j];
            const double rw = s.weight - lw;
            const double rp = s.positive - lp;
            if (lw <= 0 || rw <= 0 || lw < params.min_samples_leaf || rw < params.min_samples_leaf)
                return;
            const double parent = s.positive * (s.weight - s.positive) / s.weight;
            const double child = lp * (lw - lp) / lw + rp * (rw - rp) / rw;
            const double gain = parent - child;
            Candidate& c = best[j * n_cols + f];
            if (!c.valid || gain > c.gain + 1e-12 * s.weight) {
                c.gain = gain;
                c.threshold = threshold;
                c.valid = true;
            }
        };

        for (std::size_t f = 0; f < n_cols; ++f) {
            const auto& col = view.values[f];
            if (view.columns[f].kind == ColumnKind::numeric) {
                acc_w.assign(n_slots, 0.0);
                acc_p.assign(n_slots, 0.0);
                last.assign(n_slots, 0.0);
                seen.assign(n_slots, 0);
                for (RowIndex r : live_sorted[f]) {
                    const auto j = static_cast<std::size_t>(slot_of[r]);
                    const double v = col[r];
                    if (seen[j] && v > last[j]) {
                        best[j * n_cols + f].nonconstant = true;
                        double mid = last[j] + (v - last[j]) / 2.0;
                        if (!(mid < v)) mid = last[j];
                        evaluate(j, f, acc_w[j], acc_p[j], mid);
                    }
                    acc_w[j] += w[r];
                    acc_p[j] += w[r] * y[r];
                    last[j] = v;
                    seen[j] = 1;
                }
            } else {
                const std::size_t k = std::max<std::size_t>(view.columns[f].n_categories, 1);
                std::vector<double> cw(n_slots * k, 0.0), cp(n_slots * k, 0.0);
                for (RowIndex r : live) {
                    const int js = slot_of[r];
                    const auto c = static_cast<std::size_t>(col[r]);
                    cw[static_cast<std::size_t>(js) * k + c] += w[r];
                    cp[static_cast<std::size_t>(js) * k + c] += w[r] * y[r];
                }
                for (std::size_t j = 0; j < n_slots; ++j) {
                    if (!frontier[j].splittable) continue;
                    std::size_t present = 0;
                    for (std::size_t c = 0; c < k; ++c) present += cw[j * k + c] > 0;
                    if (present < 2) continue;
                    best[j * n_cols + f].nonconstant = true;
                    for (std::size_t c = 0; c < k; ++c)
                        if (cw[j * k + c] > 0)
                            evaluate(j, f, cw[j * k + c], cp[j * k + c], static_cast<double>(c));
                }
            }
        }

        // Pick a split per slot and grow the next frontier.
        std::vector<Slot> next;
        std::vector<int> chosen_feature(n_slots, -1);
        std::vector<int> left_slot(n_slots, -1);
        std::vector<std::size_t> perm(n_cols);
        for (std::size_t j = 0; j < n_slots; ++j) {
            if (!frontier[j].splittable) continue;
            std::vector<std::size_t> candidates;
            if (subsample) {
                std::iota(perm.begin(), perm.end(), std::size_t{0});
                std::shuffle(perm.begin(), perm.end(), rng);
                std::size_t taken = 0;
                for (std::size_t f : perm) {
                    if (taken >= max_features) break;
                    if (!best[j * n_cols + f].nonconstant) continue;
                    candidates.push_back(f);
                    ++taken;
                }
                std::sort(candidates.begin(), candidates.end());
            } else {
                candidates.resize(n_cols);
                std::iota(candidates.begin(), candidates.end(), std::size_t{0});
            }
            int pick = -1;
            double pick_gain = 0.0;
            for (std::size_t f : candidates) {
                const Candidate& c = best[j * n_cols + f];
                if (!c.valid) continue;
                if (pick < 0 || c.gain > pick_gain + 1e-12 * frontier[j].weight) {
                    pick = static_cast<int>(f);
                    pick_gain = c.gain;
                }
            }
            if (pick < 0) continue;
            chosen_feature[j] = pick;

            const auto pf = static_cast<std::size_t>(pick);
            TreeNode& parent = nodes[static_cast<std::size_t>(frontier[j].node)];
            parent.feature = pick;
            parent.categorical = view.columns[pf].kind == ColumnKind::categorical;
            parent.threshold = best[j * n_cols + pf].threshold;
            const int left_node = static_cast<int>(nodes.size());
            parent.left = left_node;
            parent.right = left_node + 1;
            nodes.emplace_back();
            nodes.emplace_back();
            left_slot[j] = static_cast<int>(next.size());
            next.push_back({left_node, 0.0, 0.0, frontier[j].depth + 1, false});
            next.push_back({left_node + 1, 0.0, 0.0, frontier[j].depth + 1, false});
        }

        for (RowIndex r : live) {
            const int js = slot_of[r];
            const auto j = static_cast<std::size_t>(js);
            if (chosen_feature[j] < 0) {
                slot_of[r] = -1;
                continue;
            }
            const TreeNode& parent = nodes[static_cast<std::size_t>(frontier[j].node)];
            const double v = view.values[static_cast<std::size_t>(parent.feature)][r];
            const bool go_left = parent.categorical ? v == parent.threshold : v <= parent.threshold;
            const int ns = left_slot[j] + (go_left ? 0 : 1);
            slot_of[r] = ns;
            next[static_cast<std::size_t>(ns)].weight += w[r];
            next[static_cast<std::size_t>(ns)].positive += w[r] * y[r];
        }
        for (const Slot& s : next) {
            TreeNode& node = nodes[static_cast<std::size_t>(s.node)];
            node.weight = s.weight;
            node.value = s.positive / s.weight;
        }
        frontier = std::move(next);
    }
    return DecisionTree(std::move(nodes));
}

void check_inputs(const FeatureView& view, std::span<const int> labels,
                  std::span<const double> weights) {
    if (view.rows() == 0) throw Error("cannot fit a model on zero rows");
    if (labels.size() != view.rows() || weights.size() != view.rows())
        throw Error("labels/weights do not match the feature view");
    if (view.values.size() != view.cols()) throw Error("feature view is malformed");
    for (double w : weights)
        if (!(w >= 0)) throw Error("weights must be non-negative");
}

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

}  // namespace

FeatureView feature_view(const Dataset& dataset, bool include_sensitive) {
    FeatureView view;
    view.ids = dataset.ids;
    for (const Column& col : dataset.features) {
        view.columns.push_back({col.name, col.kind, col.categories.size(), false});
        view.values.push_back(col.values);
    }
    if (include_sensitive) {
        view.columns.push_back({dataset.sensitive_name, ColumnKind::numeric, 0, true});
        view.values.emplace_back(dataset.sensitive.begin(), dataset.sensitive.end());
    }
    return view;
}

void TreeParams::validate() const {
    if (max_depth < 1) throw ConfigError("max_depth must be >= 1");
    if (min_samples_split < 1 || min_samples_leaf < 1)
        throw ConfigError("minimum sample counts must be >= 1");
}

void ForestParams::validate() const {
    if (n_trees < 1) throw ConfigError("n_trees must be >= 1");
    tree.validate();
}

double DecisionTree::predict(const FeatureView& view, std::size_t row) const {
    std::size_t k = 0;
    while (nodes_[k].feature >= 0) {
        const TreeNode& n = nodes_[k];
        const double v = view.values[static_cast<std::size_t>(n.feature)][row];
        const bool go_left = n.categorical ? v == n.threshold : v <= n.threshold;
        k = static_cast<std::size_t>(go_left ? n.left : n.right);
    }
    return nodes_[k].value;
}

bool DecisionTree::uses_column(std::size_t column) const {
    return std::any_of(nodes_.begin(), nodes_.end(), [&](const TreeNode& n) {
        return n.feature == static_cast<int>(column);
    });
}

int DecisionTree::depth() const {
    std::vector<int> d(nodes_.size(), 0);
    int deepest = 0;
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        deepest = std::max(deepest, d[k]);
        if (nodes_[k].feature >= 0) {
            d[static_cast<std::size_t>(nodes_[k].left)] = d[k] + 1;
            d[static_cast<std::size_t>(nodes_[k].right)] = d[k] + 1;
        }
    }
    return deepest;
}

bool TrainedModel::uses_sensitive() const {
    if (kind_ == LearnerKind::logistic)
        return std::any_of(encoded_manifest_.begin(), encoded_manifest_.end(),
                           [](const EncodedColumn& c) { return c.sensitive; });
    return std::any_of(columns_.begin(), columns_.end(), [](const ViewColumn& c) { return c.sensitive; });
}

void TrainedModel::check_view(const FeatureView& view) const {
    if (view.columns != columns_)
        throw Error("feature view columns differ from the ones the model was trained on");
}

std::vector<double> TrainedModel::predict_scores(const FeatureView& view) const {
    if (kind_ == LearnerKind::logistic) throw Error("logistic model needs an encoded matrix");
    check_view(view);
    std::vector<double> scores(view.rows(), 0.0);
    for (const DecisionTree& tree : trees_)
        for (std::size_t r = 0; r < view.rows(); ++r) scores[r] += tree.predict(view, r);
    const double n = static_cast<double>(trees_.size());
    for (double& s : scores) s /= n;
    return scores;
}

std::vector<double> TrainedModel::predict_scores(const EncodedMatrix& m) const {
    if (kind_ != LearnerKind::logistic) throw Error("tree models predict from a feature view");
    if (m.cols != coef_.size()) throw Error("encoded width differs from the model's");
    std::vector<double> scores(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) {
        double z = intercept_;
        for (std::size_t c = 0; c < m.cols; ++c) z += coef_[c] * m.at(r, c);
        scores[r] = sigmoid(z);
    }
    return scores;
}

std::vector<double> TrainedModel::predict_scores(const Dataset& dataset) const {
    if (kind_ == LearnerKind::logistic) {
        if (!encoder_) throw Error("logistic model has no attached encoder");
        return predict_scores(apply_encoder(*encoder_, dataset));
    }
    return predict_scores(feature_view(dataset, uses_sensitive()));
}

std::vector<int> TrainedModel::predict_labels(const Dataset& dataset) const {
    std::vector<int> labels;
    for (double s : predict_scores(dataset)) labels.push_back(s >= 0.5 ? 1 : 0);
    return labels;
}

bool TrainedModel::operator==(const TrainedModel& other) const {
    return kind_ == other.kind_ && columns_ == other.columns_ && trees_ == other.trees_ &&
           coef_ == other.coef_ && intercept_ == other.intercept_;
}

std::string TrainedModel::serialize() const {
    std::ostringstream os;
    os.precision(17);
    os << "model kind=" << to_string(kind_) << " trees=" << trees_.size()
       << " columns=" << (kind_ == LearnerKind::logistic ? encoded_manifest_.size() : columns_.size())
       << "\n";
    for (std::size_t c = 0; c < columns_.size(); ++c)
        os << "  column index=" << c << " name=" << columns_[c].name
           << " kind=" << (columns_[c].kind == ColumnKind::numeric ? "numeric" : "categorical")
           << " categories=" << columns_[c].n_categories << " sensitive=" << columns_[c].sensitive
           << "\n";
    for (std::size_t t = 0; t < trees_.size(); ++t) {
        const auto& nodes = trees_[t].nodes();
        os << "  tree index=" << t << " nodes=" << nodes.size() << "\n";
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const TreeNode& n = nodes[k];
            if (n.feature < 0) {
                os << "    leaf id=" << k << " value=" << n.value << " weight=" << n.weight << "\n";
            } else {
                os << "    split id=" << k << " column=" << n.feature
                   << (n.categorical ? " equals=" : " le=") << n.threshold << " left=" << n.left
                   << " right=" << n.right << " weight=" << n.weight << "\n";
            }
        }
    }
    if (kind_ == LearnerKind::logistic) {
        os << "  intercept value=" << intercept_ << "\n";
        for (std::size_t c = 0; c < coef_.size(); ++c)
            os << "  coefficient index=" << c << " source=" << encoded_manifest_[c].source
               << " category=" << encoded_manifest_[c].category << " value=" << coef_[c] << "\n";
    }
    return os.str();
}

TrainedModel fit_tree(const FeatureView& view, std::span<const int> labels,
                      std::span<const double> weights, const TreeParams& params, std::uint64_t seed) {
    params.validate();
    check_inputs(view, labels, weights);
    const auto canonical = canonical_order(view);
    const auto sorted = presort(view, canonical);

    TrainedModel model;
    model.kind_ = LearnerKind::tree;
    model.columns_ = view.columns;
    model.trees_.push_back(
        build_tree(view, labels, weights, sorted, canonical, params, params.max_features, seed));
    for (std::size_t r = 0; r < view.rows(); ++r)
        if (weights[r] > 0) model.fit_ids_.push_back(view.ids[r]);
    return model;
}

std::uint64_t forest_bootstrap_seed(std::uint64_t forest_seed, std::size_t t) {
    return derive_seed(forest_seed, std::uint64_t{0xB007}, static_cast<std::uint64_t>(t));
}

std::uint64_t forest_tree_seed(std::uint64_t forest_seed, std::size_t t) {
    return derive_seed(forest_seed, std::uint64_t{0x7EE}, static_cast<std::uint64_t>(t));
}

std::size_t forest_max_features(std::size_t cols) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(cols)))));
}

namespace {

// Rows in id order with cumulative weights, shared by every tree of a forest.
struct BootstrapTable {
    std::vector<std::size_t> order;
    std::vector<double> cumulative;
};

BootstrapTable bootstrap_table(std::span<const InstanceId> ids, std::span<const double> weights) {
    BootstrapTable t;
    t.order.resize(ids.size());
    std::iota(t.order.begin(), t.order.end(), std::size_t{0});
    std::sort(t.order.begin(), t.order.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
    double total = 0.0;
    t.cumulative.reserve(ids.size());
    for (std::size_t r : t.order) {
        total += weights[r];
        t.cumulative.push_back(total);
    }
    return t;
}

std::vector<double> draw_bootstrap(const BootstrapTable& t, std::uint64_t seed) {
    const std::size_t n = t.order.size();
    std::vector<double> counts(n, 0.0);
    if (n == 0) return counts;
    const double total = t.cumulative.back();
    SplitMix64 rng(seed);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
        auto it = std::upper_bound(t.cumulative.begin(), t.cumulative.end(), u);
        if (it == t.cumulative.end()) --it;
        counts[t.order[static_cast<std::size_t>(it - t.cumulative.begin())]] += 1.0;
    }
    return counts;
}

}  // namespace

std::vector<double> bootstrap_counts(std::span<const InstanceId> ids, std::span<const double> weights,
                                     std::uint64_t seed) {
    return draw_bootstrap(bootstrap_table(ids, weights), seed);
}

TrainedModel fit_forest(const FeatureView& view, std::span<const int> labels,
                        std::span<const double> weights, const ForestParams& params) {
    params.validate();
    check_inputs(view, labels, weights);
    const auto canonical = canonical_order(view);
    const auto sorted = presort(view, canonical);
    const std::size_t max_features =
        params.tree.max_features > 0 ? params.tree.max_features : forest_max_features(view.cols());

    TrainedModel model;
    model.kind_ = LearnerKind::forest;
    model.columns_ = view.columns;
    model.trees_.reserve(params.n_trees);
    const BootstrapTable table = params.bootstrap ? bootstrap_table(view.ids, weights) : BootstrapTable{};
    for (std::size_t t = 0; t < params.n_trees; ++t) {
        std::vector<double> counts =
            params.bootstrap ? draw_bootstrap(table, forest_bootstrap_seed(params.seed, t))
                             : std::vector<double>(weights.begin(), weights.end());
        model.trees_.push_back(build_tree(view, labels, counts, sorted, canonical, params.tree,
                                          max_features, forest_tree_seed(params.seed, t)));
    }
    for (std::size_t r = 0; r < view.rows(); ++r)
        if (weights[r] > 0) model.fit_ids_.push_back(view.ids[r]);
    return model;
}

double logistic_objective(const EncodedMatrix& x, std::span<const int> labels,
                          std::span<const double> weights, double l2, std::span<const double> params,
                          std::vector<double>& grad) {
    const std::size_t d = x.cols;
    grad.assign(d + 1, 0.0);
    double total_w = 0.0;
    for (double w : weights) total_w += w;
    if (!(total_w > 0)) throw Error("logistic fit needs positive total weight");

    double loss = 0.0;
    for (std::size_t r = 0; r < x.rows; ++r) {
        double z = params[d];
        const auto row = x.row(r);
        for (std::size_t c = 0; c < d; ++c) z += params[c] * row[c];
        const double yv = labels[r];
        // log(1 + e^z) - y z, evaluated without overflow
        const double softplus = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
        loss += weights[r] * (softplus - yv * z);
        const double residual = weights[r] * (sigmoid(z) - yv);
        for (std::size_t c = 0; c < d; ++c) grad[c] += residual * row[c];
        grad[d] += residual;
    }
    loss /= total_w;
    for (double& g : grad) g /= total_w;
    for (std::size_t c = 0; c < d; ++c) {
        loss += 0.5 * l2 * params[c] * params[c];
        grad[c] += l2 * params[c];
    }
    return loss;
}

TrainedModel fit_logistic(const EncodedMatrix& x, std::span<const int> labels,
                          std::span<const double> weights, const LogisticParams& params) {
    if (x.rows == 0) throw Error("cannot fit a model on zero rows");
    if (labels.size() != x.rows || weights.size() != x.rows)
        throw Error("labels/weights do not match the encoded matrix");

    const std::size_t d = x.cols;
    std::vector<double> theta(d + 1, 0.0), grad, trial(d + 1), trial_grad;
    double step = 1.0;
    int it = 0;
    double loss = logistic_objective(x, labels, weights, params.l2, theta, grad);
    for (; it < params.max_iter; ++it) {
        double gmax = 0.0, gnorm2 = 0.0;
        for (double g : grad) {
            gmax = std::max(gmax, std::abs(g));
            gnorm2 += g * g;
        }
        if (gmax < params.tol) break;
        double trial_loss = 0.0;
        while (true) {
            for (std::size_t c = 0; c <= d; ++c) trial[c] = theta[c] - step * grad[c];
            trial_loss = logistic_objective(x, labels, weights, params.l2, trial, trial_grad);
            if (std::isnan(trial_loss)) throw Error("logistic regression diverged (loss is NaN)");
            if (trial_loss <= loss - 0.5 * step * gnorm2) break;
            step *= 0.5;
            if (step < 1e-20) break;
        }
        if (step < 1e-20) break;
        theta.swap(trial);
        grad.swap(trial_grad);
        loss = trial_loss;
        step = std::min(step * 2.0, 1e6);
    }
    if (std::isnan(loss)) throw Error("logistic regression diverged (loss is NaN)");

    TrainedModel model;
    model.kind_ = LearnerKind::logistic;
    model.coef_.assign(theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(d));
    model.intercept_ = theta[d];
    model.encoded_manifest_ = x.manifest;
    model.fit_ids_ = x.ids;
    model.iterations_ = it;
    return model;
}

TrainedModel train_model(const Dataset& train, LearnerKind kind, const LearnerParams& params,
                         std::uint64_t seed) {
    switch (kind) {
    case LearnerKind::forest: {
        ForestParams fp = params.forest;
        fp.seed = seed;
        return fit_forest(feature_view(train, train.sensitive_visible), train.label, train.weight, fp);
    }
    case LearnerKind::tree:
        return fit_tree(feature_view(train, train.sensitive_visible), train.label, train.weight,
                        params.tree, seed);
    case LearnerKind::logistic: {
        std::vector<std::size_t> rows(train.size());
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        Encoder enc = Encoder::fit(train, rows, train.sensitive_visible);
        EncodedMatrix m = apply_encoder(enc, train);
        TrainedModel model = fit_logistic(m, train.label, train.weight, params.logistic);
        model.encoder_ = std::move(enc);
        return model;
    }
    }
    throw Error("unknown learner");
}

double sensitive_usage(const TrainedModel& model) {
    if (model.kind() != LearnerKind::forest)
        throw Error("sensitive usage is defined for random forests only");
    const auto& cols = model.columns();
    auto it = std::find_if(cols.begin(), cols.end(), [](const ViewColumn& c) { return c.sensitive; });
    if (it == cols.end()) throw Error("model was trained without the sensitive column");
    const auto col = static_cast<std::size_t>(it - cols.begin());
    std::size_t using_it = 0;
    for (const DecisionTree& t : model.trees()) using_it += t.uses_column(col);
    return static_cast<double>(using_it) / static_cast<double>(model.trees().size());
}

}  // namespace fairbias
