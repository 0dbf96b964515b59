#pragma once

#include <optional>

#include "rotor/pattern.hpp"

namespace rotor {

// Parameters of the canonical over-twist pattern Gamma_{r, p/q}: a coprime
// pair p/q < 1/2 and a shift 0 <= r <= q - 2p.
struct OvertwistSpec {
    long long p = 0;
    long long q = 0;
    long long r = 0;

    // Throws "invalid over-twist specification" unless gcd(p,q) = 1,
    // 0 < 2p < q and 0 <= r <= q - 2p.
    void validate() const;
};

// The four monotone blocks of the permutation, left to right: an ascending
// run of length r, a descending run of length p landing on the top points, a
// descending run of length p landing on the bottom points, and an ascending
// tail.
enum class Color { red, green, pink, blue };

// j -> j+p on the red block, j -> q-j+r+1 on green, j -> 2p-j+r+1 on pink,
// j -> j-p on blue.
CyclicPattern overtwist_permutation(const OvertwistSpec& spec);

// Block membership of point j (1-based). Throws "index out of range".
Color color_of(const OvertwistSpec& spec, long long j);

enum class Modality { unimodal, bimodal };

// Unimodal exactly at the extreme shifts r = 0 and r = q - 2p.
Modality modality_of(const OvertwistSpec& spec);

// If the pattern equals Gamma_{r, p/q} for its own over-rotation pair (which
// must be coprime with p/q < 1/2), returns that r; otherwise nullopt.
std::optional<long long> overtwist_index_of(const CyclicPattern& pattern);

} // namespace rotor
