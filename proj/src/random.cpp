// SPDX-License-Identifier: MIT
#include "nlrta/random.hpp"

namespace nlrta {

namespace {

std::uint64_t fnv1a(std::string_view text) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t index) noexcept {
    return mix64(mix64(seed ^ fnv1a(label)) + (index + 1) * kGoldenGamma);
}

}  // namespace nlrta
