// Independent cross-checking machinery for the test suite. Everything here is
// deliberately written by the most direct route available (brute force,
// textbook elimination, plain iteration) so that it shares no code with the
// library implementations it checks.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "rotor/pattern.hpp"
#include "rotor/rational.hpp"

namespace oracles {

using rotor::CyclicPattern;
using rotor::Int;
using rotor::Rat;

// Every single-cycle permutation of 1..q, by filtering all q! permutations.
inline std::vector<CyclicPattern> all_cyclic_patterns(int q) {
    std::vector<int> perm(static_cast<size_t>(q));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<CyclicPattern> out;
    do {
        int j = 1, len = 0;
        do {
            j = perm[static_cast<size_t>(j) - 1];
            ++len;
        } while (j != 1 && len <= q);
        if (j == 1 && len == q) out.push_back(CyclicPattern{q, perm});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// The Sharkovsky order spelled out as an explicit ranked list covering
// 1..limit: odds descending by value, then 2*odds, 4*odds, ..., finally the
// powers of two in decreasing order. rank[m] smaller means m earlier
// (stronger).
inline std::vector<int> sharkovsky_ranks(int limit) {
    std::vector<int> order;
    for (long long mult = 1; mult <= limit; mult *= 2)
        for (long long odd = 3; odd * mult <= limit; odd += 2)
            order.push_back(static_cast<int>(odd * mult));
    std::vector<int> pows;
    for (long long v = 1; v <= limit; v *= 2) pows.push_back(static_cast<int>(v));
    for (auto it = pows.rbegin(); it != pows.rend(); ++it) order.push_back(*it);
    std::vector<int> rank(static_cast<size_t>(limit) + 1, -1);
    for (size_t i = 0; i < order.size(); ++i) rank[static_cast<size_t>(order[i])] = static_cast<int>(i);
    return rank;
}

// Uniform-ish random rational in [0,1] with denominator at most max_den.
inline Rat random_unit_rat(std::mt19937_64& rng, long long max_den) {
    std::uniform_int_distribution<long long> dd(1, max_den);
    long long d = dd(rng);
    std::uniform_int_distribution<long long> nd(0, d);
    return Rat(Int(nd(rng)), Int(d));
}

// A weighted directed edge for the walk oracles below.
struct WalkEdge {
    int u, v, w;
};

// Minimum mean weight over closed walks of length 1..max_len, by plain
// dynamic programming from every start vertex. When max_len is at least the
// number of vertices this equals the minimum cycle mean, since a minimizing
// cycle is simple and any closed walk decomposes into cycles.
inline std::optional<Rat> min_mean_closed_walk(int n, const std::vector<WalkEdge>& edges,
                                               int max_len) {
    constexpr long long kInf = 1LL << 60;
    std::optional<Rat> best;
    for (int s = 0; s < n; ++s) {
        std::vector<long long> cur(static_cast<size_t>(n), kInf);
        std::vector<long long> nxt(static_cast<size_t>(n));
        cur[static_cast<size_t>(s)] = 0;
        for (int len = 1; len <= max_len; ++len) {
            std::fill(nxt.begin(), nxt.end(), kInf);
            for (const WalkEdge& e : edges)
                if (cur[static_cast<size_t>(e.u)] < kInf)
                    nxt[static_cast<size_t>(e.v)] =
                        std::min(nxt[static_cast<size_t>(e.v)],
                                 cur[static_cast<size_t>(e.u)] + e.w);
            cur = nxt;
            long long w = cur[static_cast<size_t>(s)];
            if (w < kInf) {
                Rat mean{Int(w), Int(len)};
                if (!best || mean < *best) best = mean;
            }
        }
    }
    return best;
}

// Strongly connected component ids from the transitive closure, computed by
// the most naive relaxation available.
inline std::vector<int> brute_scc_ids(int n, const std::vector<std::vector<bool>>& adj) {
    std::vector<std::vector<bool>> reach = adj;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (reach[static_cast<size_t>(i)][static_cast<size_t>(k)])
                for (int j = 0; j < n; ++j)
                    if (reach[static_cast<size_t>(k)][static_cast<size_t>(j)])
                        reach[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
    std::vector<int> id(static_cast<size_t>(n), -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        if (id[static_cast<size_t>(i)] >= 0) continue;
        id[static_cast<size_t>(i)] = next;
        for (int j = i + 1; j < n; ++j)
            if (id[static_cast<size_t>(j)] < 0 &&
                reach[static_cast<size_t>(i)][static_cast<size_t>(j)] &&
                reach[static_cast<size_t>(j)][static_cast<size_t>(i)])
                id[static_cast<size_t>(j)] = next;
        ++next;
    }
    return id;
}

} // namespace oracles
