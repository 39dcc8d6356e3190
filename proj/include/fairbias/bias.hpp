#pragma once

#include <cstdint>
#include <vector>

#include "fairbias/dataset.hpp"

namespace fairbias {

struct BiasSpec {
    BiasKind kind = BiasKind::label;
    /// beta_l for label bias, p_u for the selection kinds. In [0, 1].
    double intensity = 0.0;
    /// beta_n; only used by label bias.
    double noise = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Half the score range of `dataset`; throws when scores are constant.
double score_scale(const Dataset& dataset);

/// S_b = S - beta_l * A * scale + N, N ~ Normal(0, beta_n * scale), label =
/// (S_b >= threshold). The noise draw for a row is keyed by (seed, id), so
/// subsets of a dataset receive the same noise. beta_l = 0 returns the input
/// unchanged.
Dataset inject_label_bias(const Dataset& dataset, double beta_l, double beta_n, std::uint64_t seed);

/// The per-row normal deviate used by inject_label_bias (standard normal).
double label_noise_deviate(std::uint64_t seed, InstanceId id);

/// Removal priority per row (lower goes first). Rows outside the kind's
/// target cells get +infinity. Pure function of (id, seed, kind) and, for
/// self-selection, the score.
std::vector<double> removal_priority(const Dataset& dataset, BiasKind kind, std::uint64_t seed);

/// Ids removed at intensity p_u. Sets nest: p <= q implies set(p) within set(q).
IdSet removal_set(const Dataset& dataset, BiasKind kind, double p_u, std::uint64_t seed);

/// Biased version of `dataset` per `spec`; ids are preserved.
Dataset biased_view(const Dataset& dataset, const BiasSpec& spec);

/// Remove every row of group `a` (1 = unprivileged).
Dataset exclude_group(const Dataset& dataset, int a);

/// Removal counts never exceed the target cell; tiny epsilon guards the floor
/// against representation error (0.1 * 7 = 0.7000000000000001 and friends).
std::size_t removal_count(double p_u, std::size_t cell_size);

}  // namespace fairbias
