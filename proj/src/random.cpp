#include "fairbias/random.hpp"

#include <bit>
#include <cstring>

namespace fairbias {

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

std::uint64_t hash_string(std::string_view text) {
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t hash_real(double value) {
    if (value == 0.0) value = 0.0;
    return std::bit_cast<std::uint64_t>(value);
}

double unit_uniform(std::uint64_t key) {
    SplitMix64 engine(key);
    // 53 random mantissa bits, shifted off zero.
    return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace fairbias
