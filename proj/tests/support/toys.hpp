#pragma once

// Small random datasets for property tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fairbias/dataset.hpp"

namespace fairbias::testing {

struct ToyOptions {
    std::size_t n = 12;
    std::size_t numeric = 2;
    bool categorical = true;
    double unprivileged_share = 0.5;
    // Shifts the unprivileged scores down so labels depend on A.
    double group_gap = 0.0;
};

// Ids are spread out (100 + 7i) so position/id confusion shows up.
inline Dataset toy_dataset(std::uint64_t seed, const ToyOptions& opt = {}) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit;
    Dataset ds;
    ds.name = "toy";
    ds.threshold = 10.0;
    for (std::size_t j = 0; j < opt.numeric; ++j) ds.features.push_back({"x" + std::to_string(j), ColumnKind::numeric, {}, {}});
    if (opt.categorical)
        ds.features.push_back({"colour", ColumnKind::categorical, {}, {"blue", "green", "red"}});
    for (std::size_t i = 0; i < opt.n; ++i) {
        int a = unit(rng) < opt.unprivileged_share ? 1 : 0;
        if (i == 0) a = 0;
        if (i == 1) a = 1;
        ds.ids.push_back(100 + 7 * i);
        ds.sensitive.push_back(a);
        double s = std::clamp(unit(rng) * 20.0 - opt.group_gap * a, 0.0, 20.0);
        ds.score.push_back(s);
        ds.label.push_back(s >= ds.threshold ? 1 : 0);
        ds.weight.push_back(1.0);
        for (std::size_t j = 0; j < opt.numeric; ++j)
            ds.features[j].values.push_back(normal(rng) + 0.1 * (s - 10.0));
        if (opt.categorical)
            ds.features.back().values.push_back(static_cast<double>(rng() % 3));
    }
    return ds;
}

inline std::vector<int> random_labels(std::mt19937_64& rng, std::size_t n, double p = 0.5) {
    std::bernoulli_distribution coin(p);
    std::vector<int> out(n);
    for (auto& v : out) v = coin(rng) ? 1 : 0;
    return out;
}

inline std::vector<std::size_t> all_rows(const Dataset& ds) {
    std::vector<std::size_t> rows(ds.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    return rows;
}

}  // namespace fairbias::testing
