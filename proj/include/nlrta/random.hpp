// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string_view>

namespace nlrta {

/// Counter-based 64-bit generator (SplitMix64 finalizer applied to a
/// Weyl sequence).
///
/// Word number c (0-based) of the stream with key K is
///
///     mix64(K + (c + 1) * 0x9E3779B97F4A7C15)
///
/// where mix64 is the SplitMix64 output function. Every word is a pure
/// function of (key, counter), so streams can be split or replayed without
/// shared state. The generator is a small value type and is passed by value.
class CounterRng {
public:
    constexpr explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) noexcept
        : key_(key), counter_(counter) {}

    [[nodiscard]] constexpr std::uint64_t key() const noexcept { return key_; }
    [[nodiscard]] constexpr std::uint64_t counter() const noexcept { return counter_; }

    /// Word at absolute position `c` of this stream; does not advance.
    [[nodiscard]] constexpr std::uint64_t word(std::uint64_t c) const noexcept;

    /// Returns the current word and advances the counter.
    constexpr std::uint64_t next() noexcept { return word(counter_++); }

    /// Skip `n` words.
    constexpr void advance(std::uint64_t n) noexcept { counter_ += n; }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 output function.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t CounterRng::word(std::uint64_t c) const noexcept {
    return mix64(key_ + (c + 1) * kGoldenGamma);
}

/// Child seed for a labelled call site: mix64(mix64(seed ^ fnv1a(label)) + (index + 1) * golden).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                                        std::uint64_t index) noexcept;

}  // namespace nlrta
