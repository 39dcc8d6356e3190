#include "fairbias/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fairbias/random.hpp"

namespace fairbias {

Dataset make_wae_dataset(const SyntheticParams& p) {
    if (p.n < 2 || p.n_features == 0) throw ConfigError("synthetic dataset needs n >= 2 and features");
    if (!(p.unprivileged_share > 0 && p.unprivileged_share < 1))
        throw ConfigError("unprivileged share must lie in (0, 1)");

    // Exact group split; membership shuffled by a keyed sort.
    const auto n_unpriv = static_cast<std::size_t>(std::llround(p.unprivileged_share * static_cast<double>(p.n)));
    std::vector<std::pair<std::uint64_t, std::size_t>> order(p.n);
    for (std::size_t i = 0; i < p.n; ++i) order[i] = {derive_seed(p.seed, 0x67726f7570ULL, i), i};
    std::sort(order.begin(), order.end());

    Dataset ds;
    ds.name = "synthetic_wae";
    ds.threshold = 10.0;
    ds.sensitive.assign(p.n, 0);
    for (std::size_t k = 0; k < n_unpriv; ++k) ds.sensitive[order[k].second] = 1;

    std::vector<double> coef(p.n_features);
    for (std::size_t j = 0; j < p.n_features; ++j) coef[j] = 1.0 / static_cast<double>(j + 1);
    double norm = 0.0;
    for (double c : coef) norm += c * c;
    norm = std::sqrt(norm);

    ds.features.resize(p.n_features);
    for (std::size_t j = 0; j < p.n_features; ++j) {
        ds.features[j].name = "x" + std::to_string(j + 1);
        ds.features[j].values.resize(p.n);
    }
    SplitMix64 rng(derive_seed(p.seed, 0x7773ULL));
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < p.n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < p.n_features; ++j) {
            const double x = normal(rng);
            ds.features[j].values[i] = x;
            s += coef[j] * x;
        }
        // Grade-like score on [0, 20]: uniform in distribution, label = score >= 10.
        const double z = (s / norm + p.score_noise * normal(rng)) / std::sqrt(1.0 + p.score_noise * p.score_noise);
        s = 10.0 * std::erfc(-z / std::sqrt(2.0));
        ds.ids.push_back(i);
        ds.score.push_back(s);
        ds.label.push_back(s >= ds.threshold ? 1 : 0);
        ds.weight.push_back(1.0);
    }
    ds.validate();
    return ds;
}

}  // namespace fairbias
