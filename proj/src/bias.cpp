#include "fairbias/bias.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "fairbias/random.hpp"

namespace fairbias {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Takes the `count` lowest-priority rows among those with finite priority.
void take_lowest(const Dataset& ds, const std::vector<double>& priority,
                 const std::vector<std::size_t>& cell, std::size_t count, IdSet& out) {
    std::vector<std::size_t> order = cell;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (priority[a] != priority[b]) return priority[a] < priority[b];
        return ds.ids[a] < ds.ids[b];
    });
    for (std::size_t k = 0; k < count && k < order.size(); ++k) out.insert(ds.ids[order[k]]);
}

bool flag_group_removed(const Dataset& ds) {
    return ds.group_removed || (!ds.empty() && (ds.group_size(0) == 0 || ds.group_size(1) == 0));
}

}  // namespace

void BiasSpec::validate() const {
    if (!(intensity >= 0.0 && intensity <= 1.0))
        throw ConfigError("bias intensity must lie in [0, 1]");
    if (!(noise >= 0.0)) throw ConfigError("noise intensity must be >= 0");
}

double score_scale(const Dataset& dataset) {
    if (dataset.empty()) throw Error("score scale of an empty dataset");
    auto [lo, hi] = std::minmax_element(dataset.score.begin(), dataset.score.end());
    const double scale = (*hi - *lo) / 2.0;
    if (!(scale > 0)) throw Error("dataset '" + dataset.name + "' has constant scores");
    return scale;
}

double label_noise_deviate(std::uint64_t seed, InstanceId id) {
    SplitMix64 engine(derive_seed(seed, id));
    std::normal_distribution<double> normal(0.0, 1.0);
    return normal(engine);
}

Dataset inject_label_bias(const Dataset& dataset, double beta_l, double beta_n, std::uint64_t seed) {
    if (beta_l < 0 || beta_l > 1) throw ConfigError("beta_l must lie in [0, 1]");
    if (beta_n < 0) throw ConfigError("beta_n must be >= 0");
    if (beta_l == 0.0) return dataset;

    const double scale = score_scale(dataset);
    Dataset out = dataset;
    out.label_biased = true;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double noise = beta_n * scale * label_noise_deviate(seed, out.ids[i]);
        const double biased = dataset.score[i] - beta_l * dataset.sensitive[i] * scale + noise;
        out.score[i] = biased;
        out.label[i] = biased >= dataset.threshold ? 1 : 0;
    }
    return out;
}

std::size_t removal_count(double p_u, std::size_t cell_size) {
    const double raw = std::floor(p_u * static_cast<double>(cell_size) + 1e-9);
    return std::min(cell_size, static_cast<std::size_t>(std::max(0.0, raw)));
}

std::vector<double> removal_priority(const Dataset& ds, BiasKind kind, std::uint64_t seed) {
    const std::uint64_t kind_seed = derive_seed(seed, static_cast<std::uint64_t>(kind) + 1);
    std::vector<double> priority(ds.size(), kInf);
    switch (kind) {
    case BiasKind::label:
        throw Error("removal_priority: label bias removes no rows");
    case BiasKind::select_random:
        for (std::size_t i = 0; i < ds.size(); ++i)
            if (ds.sensitive[i] == 1) priority[i] = unit_uniform(derive_seed(kind_seed, ds.ids[i]));
        break;
    case BiasKind::select_whole_random:
        for (std::size_t i = 0; i < ds.size(); ++i)
            priority[i] = unit_uniform(derive_seed(kind_seed, ds.ids[i]));
        break;
    case BiasKind::select_malicious:
        // Targets are unprivileged positives and privileged negatives, i.e. A == Y.
        for (std::size_t i = 0; i < ds.size(); ++i)
            if (ds.sensitive[i] == ds.label[i])
                priority[i] = unit_uniform(derive_seed(kind_seed, ds.ids[i]));
        break;
    case BiasKind::select_self: {
        // Weighted sampling without replacement via exponential clocks: the
        // order of E_i / w_i is the order in which rows are drawn when each
        // draw picks row i with probability proportional to w_i.
        const double scale = score_scale(ds);
        const double eps = 0.01 * scale;
        const double s_max = *std::max_element(ds.score.begin(), ds.score.end());
        for (std::size_t i = 0; i < ds.size(); ++i) {
            if (ds.sensitive[i] != 1) continue;
            const double w = s_max - ds.score[i] + eps;
            const double u = unit_uniform(derive_seed(kind_seed, ds.ids[i]));
            priority[i] = -std::log(u) / w;
        }
        break;
    }
    }
    return priority;
}

IdSet removal_set(const Dataset& ds, BiasKind kind, double p_u, std::uint64_t seed) {
    if (!is_selection(kind)) throw Error("removal_set requires a selection kind");
    if (p_u < 0 || p_u > 1) throw ConfigError("p_u must lie in [0, 1]");
    IdSet out;
    if (p_u == 0.0 || ds.empty()) return out;

    const std::vector<double> priority = removal_priority(ds, kind, seed);
    std::vector<std::size_t> unpriv, unpriv_pos, priv_neg, all(ds.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds.sensitive[i] == 1) unpriv.push_back(i);
        if (ds.sensitive[i] == 1 && ds.label[i] == 1) unpriv_pos.push_back(i);
        if (ds.sensitive[i] == 0 && ds.label[i] == 0) priv_neg.push_back(i);
    }

    switch (kind) {
    case BiasKind::select_random:
    case BiasKind::select_self:
        take_lowest(ds, priority, unpriv, removal_count(p_u, unpriv.size()), out);
        break;
    case BiasKind::select_malicious:
        take_lowest(ds, priority, unpriv_pos, removal_count(p_u, unpriv_pos.size()), out);
        take_lowest(ds, priority, priv_neg, removal_count(p_u, priv_neg.size()), out);
        break;
    case BiasKind::select_whole_random:
        take_lowest(ds, priority, all, removal_count(p_u, unpriv.size()), out);
        break;
    case BiasKind::label:
        break;
    }
    return out;
}

Dataset biased_view(const Dataset& dataset, const BiasSpec& spec) {
    spec.validate();
    if (spec.intensity == 0.0) return dataset;
    if (spec.kind == BiasKind::label)
        return inject_label_bias(dataset, spec.intensity, spec.noise, spec.seed);
    Dataset out = dataset.drop_ids(removal_set(dataset, spec.kind, spec.intensity, spec.seed));
    out.group_removed = flag_group_removed(out);
    return out;
}

Dataset exclude_group(const Dataset& dataset, int a) {
    if (a != 0 && a != 1) throw ConfigError("group must be 0 (privileged) or 1 (unprivileged)");
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < dataset.size(); ++i)
        if (dataset.sensitive[i] != a) rows.push_back(i);
    Dataset out = dataset.take(rows);
    out.group_removed = true;
    return out;
}

}  // namespace fairbias
