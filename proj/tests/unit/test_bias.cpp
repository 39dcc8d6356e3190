#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "fairbias/bias.hpp"
#include "fairbias/metrics.hpp"
#include "fairbias/random.hpp"
#include "toys.hpp"

using namespace fairbias;
using fairbias::testing::toy_dataset;
using fairbias::testing::ToyOptions;

namespace {

const std::vector<BiasKind> kSelection{BiasKind::select_random, BiasKind::select_self,
                                       BiasKind::select_malicious, BiasKind::select_whole_random};

bool same_rows(const Dataset& a, const Dataset& b) {
    if (a.ids != b.ids || a.label != b.label || a.score != b.score || a.sensitive != b.sensitive)
        return false;
    for (std::size_t f = 0; f < a.features.size(); ++f)
        if (a.features[f].values != b.features[f].values) return false;
    return true;
}

}  // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS((BiasSpec{BiasKind::label, 1.5, 0.1, 1}).validate(), ConfigError);
    CHECK_THROWS_AS((BiasSpec{BiasKind::label, 0.5, -0.1, 1}).validate(), ConfigError);
    CHECK_NOTHROW((BiasSpec{BiasKind::select_self, 1.0, 0.0, 1}).validate());
}

TEST_CASE("intensity 0 is the identity for every kind") {
    const Dataset ds = toy_dataset(1, {.n = 60});
    for (auto k : {BiasKind::label, BiasKind::select_random, BiasKind::select_self,
                   BiasKind::select_malicious, BiasKind::select_whole_random}) {
        const Dataset v = biased_view(ds, {k, 0.0, 0.3, 5});
        CHECK(same_rows(v, ds));
        CHECK_FALSE(v.label_biased);
    }
    CHECK(removal_set(ds, BiasKind::select_random, 0.0, 3).empty());
}

TEST_CASE("label bias follows the score formula exactly") {
    const Dataset ds = toy_dataset(2, {.n = 200});
    const double beta_l = 0.5, beta_n = 0.1;
    const std::uint64_t seed = 77;
    const Dataset v = inject_label_bias(ds, beta_l, beta_n, seed);
    CHECK(v.label_biased);

    // independent recomputation
    const auto [lo, hi] = std::minmax_element(ds.score.begin(), ds.score.end());
    const double scale = (*hi - *lo) / 2.0;
    std::size_t flipped = 0, expected_flips = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        SplitMix64 eng(derive_seed(seed, ds.ids[i]));
        std::normal_distribution<double> normal(0.0, 1.0);
        const double sb = ds.score[i] - beta_l * ds.sensitive[i] * scale + normal(eng) * beta_n * scale;
        CHECK(v.score[i] == doctest::Approx(sb).epsilon(1e-12));
        const int lab = sb >= ds.threshold ? 1 : 0;
        CHECK(v.label[i] == lab);
        if (ds.sensitive[i] == 1 && ds.label[i] == 1) {
            expected_flips += lab == 0;
            flipped += v.label[i] == 0;
        }
    }
    CHECK(flipped == expected_flips);
    // membership and features untouched
    CHECK(v.ids == ds.ids);
    CHECK(v.sensitive == ds.sensitive);
    CHECK(v.features[0].values == ds.features[0].values);
}

TEST_CASE("label bias at full strength without noise lands on the midrange") {
    Dataset ds = toy_dataset(3, {.n = 20});
    const double hi = *std::max_element(ds.score.begin(), ds.score.end());
    const double lo = *std::min_element(ds.score.begin(), ds.score.end());
    const Dataset v = inject_label_bias(ds, 1.0, 0.0, 1);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds.sensitive[i] == 1 && ds.score[i] == hi) {
            CHECK(v.score[i] == doctest::Approx((hi + lo) / 2));
        }
        if (ds.sensitive[i] == 0) CHECK(v.score[i] == ds.score[i]);
    }
    Dataset flat = ds;
    std::fill(flat.score.begin(), flat.score.end(), 3.0);
    CHECK_THROWS_AS(inject_label_bias(flat, 0.3, 0.1, 1), Error);
}

TEST_CASE("label bias of a subset equals the subset of the label-biased view") {
    const Dataset ds = toy_dataset(4, {.n = 100});
    // keep the extreme scores so both share one scale
    const auto lo = static_cast<std::size_t>(std::min_element(ds.score.begin(), ds.score.end()) - ds.score.begin());
    const auto hi = static_cast<std::size_t>(std::max_element(ds.score.begin(), ds.score.end()) - ds.score.begin());
    std::vector<std::size_t> rows{lo, hi};
    for (std::size_t i = 0; i < ds.size(); i += 3)
        if (i != lo && i != hi) rows.push_back(i);
    const Dataset sub = ds.take(rows);
    const Dataset whole = inject_label_bias(ds, 0.4, 0.2, 9).take(rows);
    const Dataset part = inject_label_bias(sub, 0.4, 0.2, 9);
    CHECK(part.score == whole.score);
    CHECK(part.label == whole.label);
}

TEST_CASE("removal counts use the floor within each target cell") {
    const Dataset ds = toy_dataset(5, {.n = 97});
    const std::size_t u = ds.group_size(1);
    for (double p : {0.1, 0.3, 0.5, 0.7, 1.0}) {
        const std::size_t expect = static_cast<std::size_t>(std::floor(p * u + 1e-9));
        CHECK(removal_set(ds, BiasKind::select_random, p, 1).size() == expect);
        CHECK(removal_set(ds, BiasKind::select_self, p, 1).size() == expect);
        CHECK(removal_set(ds, BiasKind::select_whole_random, p, 1).size() == expect);
        const std::size_t mal = static_cast<std::size_t>(std::floor(p * ds.cell_size(1, 1) + 1e-9)) +
                                static_cast<std::size_t>(std::floor(p * ds.cell_size(0, 0) + 1e-9));
        CHECK(removal_set(ds, BiasKind::select_malicious, p, 1).size() == mal);
    }
    CHECK(removal_count(0.1, 70) == 7);
    CHECK(removal_count(0.7, 10) == 7);
}

TEST_CASE("selection removes only its target cells and never edits rows") {
    const Dataset ds = toy_dataset(6, {.n = 120});
    const auto index = ds.id_index();
    for (double p : {0.2, 0.6}) {
        for (InstanceId id : removal_set(ds, BiasKind::select_random, p, 2))
            CHECK(ds.sensitive[index.at(id)] == 1);
        for (InstanceId id : removal_set(ds, BiasKind::select_self, p, 2))
            CHECK(ds.sensitive[index.at(id)] == 1);
        for (InstanceId id : removal_set(ds, BiasKind::select_malicious, p, 2)) {
            const std::size_t r = index.at(id);
            CHECK(ds.sensitive[r] == ds.label[r]);
        }
        for (BiasKind k : kSelection) {
            const Dataset v = biased_view(ds, {k, p, 0.5, 2});
            const auto vi = v.id_index();
            for (std::size_t i = 0; i < v.size(); ++i) {
                const std::size_t r = index.at(v.ids[i]);
                CHECK(v.label[i] == ds.label[r]);
                CHECK(v.score[i] == ds.score[r]);
                CHECK(v.features[1].values[i] == ds.features[1].values[r]);
            }
            CHECK(v.size() + removal_set(ds, k, p, 2).size() == ds.size());
            CHECK_FALSE(v.label_biased);
            (void)vi;
        }
    }
}

TEST_CASE("malicious at full intensity leaves privileged positives and unprivileged negatives") {
    const Dataset ds = toy_dataset(7, {.n = 80});
    const Dataset v = biased_view(ds, {BiasKind::select_malicious, 1.0, 0.0, 3});
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v.label[i] != v.sensitive[i]);
    CHECK(v.cell_size(0, 1) == ds.cell_size(0, 1));
    CHECK(v.cell_size(1, 0) == ds.cell_size(1, 0));
}

TEST_CASE("random selection at full intensity empties the unprivileged group") {
    const Dataset ds = toy_dataset(8, {.n = 50});
    const Dataset v = biased_view(ds, {BiasKind::select_random, 1.0, 0.0, 3});
    CHECK(v.group_size(1) == 0);
    CHECK(v.group_removed);
    CHECK_NOTHROW(v.validate());
}

TEST_CASE("removal sets nest across the whole level grid") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Dataset ds = toy_dataset(seed, {.n = 150});
        for (BiasKind k : kSelection) {
            std::vector<IdSet> sets;
            for (int l = 0; l <= 10; ++l) sets.push_back(removal_set(ds, k, l / 10.0, seed));
            for (std::size_t i = 0; i < sets.size(); ++i)
                for (std::size_t j = i + 1; j < sets.size(); ++j)
                    for (InstanceId id : sets[i]) CHECK(sets[j].count(id) == 1);
        }
    }
}

TEST_CASE("selection is reproducible and independent of row order") {
    const Dataset ds = toy_dataset(9, {.n = 90});
    std::vector<std::size_t> perm = fairbias::testing::all_rows(ds);
    std::mt19937_64 rng(1);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Dataset shuffled = ds.take(perm);
    for (BiasKind k : kSelection) {
        CHECK(removal_set(ds, k, 0.4, 8) == removal_set(ds, k, 0.4, 8));
        CHECK(removal_set(ds, k, 0.4, 8) == removal_set(shuffled, k, 0.4, 8));
    }
}

TEST_CASE("self-selection removes low scores more often (Monte Carlo)") {
    Dataset ds;
    ds.name = "ten";
    ds.threshold = 5.0;
    for (int i = 0; i < 10; ++i) {
        ds.ids.push_back(static_cast<InstanceId>(i));
        ds.sensitive.push_back(1);
        ds.score.push_back(i);
        ds.label.push_back(i >= 5);
        ds.weight.push_back(1.0);
    }
    ds.ids.push_back(10);
    ds.sensitive.push_back(0);
    ds.score.push_back(5);
    ds.label.push_back(1);
    ds.weight.push_back(1.0);

    std::vector<int> removed(10, 0);
    for (std::uint64_t seed = 0; seed < 10000; ++seed)
        for (InstanceId id : removal_set(ds, BiasKind::select_self, 0.5, seed)) removed[id]++;
    for (int i = 0; i + 1 < 10; ++i) CHECK(removed[i] > removed[i + 1]);
    CHECK(removed[9] > 0);  // epsilon keeps the top score removable
}

TEST_CASE("random selection keeps the expected label SPD (Monte Carlo)") {
    const Dataset ds = toy_dataset(10, {.n = 400});
    const double base = *spd(ds.label, ds.sensitive);
    double sum = 0, ss = 0;
    const int trials = 300;
    for (int t = 0; t < trials; ++t) {
        const Dataset v = biased_view(ds, {BiasKind::select_random, 0.5, 0.0, static_cast<std::uint64_t>(t)});
        const double s = *spd(v.label, v.sensitive);
        sum += s;
        ss += s * s;
    }
    const double mean = sum / trials;
    const double sd = std::sqrt(ss / trials - mean * mean);
    CHECK(std::abs(mean - base) <= 3 * sd / std::sqrt(static_cast<double>(trials)));
}

TEST_CASE("exclude_group") {
    const Dataset ds = toy_dataset(11, {.n = 60});
    const Dataset e = exclude_group(ds, 1);
    CHECK(e.group_size(1) == 0);
    CHECK(e.size() == ds.group_size(0));
    CHECK(e.group_removed);
    CHECK(exclude_group(e, 1).ids == e.ids);

    // order of exclusion and malicious removal does not matter
    const BiasSpec spec{BiasKind::select_malicious, 0.4, 0.0, 6};
    const Dataset a = exclude_group(biased_view(ds, spec), 1);
    const IdSet removed = removal_set(ds, BiasKind::select_malicious, 0.4, 6);
    const Dataset b = exclude_group(ds, 1).drop_ids(removed);
    CHECK(a.ids == b.ids);
}
