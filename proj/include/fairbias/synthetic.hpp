#pragma once

#include <cstdint>

#include "fairbias/dataset.hpp"

namespace fairbias {

/// Two groups drawn from the same distribution: A is assigned independently
/// of everything else, features are standard normal, and the score is a
/// fixed linear blend of the features plus noise, mapped onto [0, 20] through
/// the normal CDF. Labels are score >= 10, so the base rate is about one half
/// and label SPD is about zero.
struct SyntheticParams {
    std::size_t n = 5000;
    std::size_t n_features = 6;
    double unprivileged_share = 0.5;
    /// Standard deviation of the score noise relative to the signal.
    double score_noise = 0.5;
    std::uint64_t seed = 1;
};

Dataset make_wae_dataset(const SyntheticParams& params);

}  // namespace fairbias
