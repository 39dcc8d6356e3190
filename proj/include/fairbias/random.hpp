#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace fairbias {

/// SplitMix64 engine. Small state, so it is cheap to construct one per
/// instance id when a draw must be keyed by id rather than by row position.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_string(std::string_view text);
/// Bits of a double, with -0.0 folded onto 0.0.
std::uint64_t hash_real(double value);

/// Deterministically combine a base seed with further key material.
inline std::uint64_t combine_seed(std::uint64_t seed, std::uint64_t part) {
    return mix64(seed ^ (mix64(part) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

template <typename... Parts>
std::uint64_t derive_seed(std::uint64_t seed, Parts... parts) {
    ((seed = combine_seed(seed, parts)), ...);
    return seed;
}

/// Uniform draw in (0, 1) that is a pure function of `key`.
double unit_uniform(std::uint64_t key);

}  // namespace fairbias
