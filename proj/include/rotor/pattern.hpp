#pragma once

#include <string>
#include <vector>

#include "rotor/rational.hpp"

namespace rotor {

// The pattern of a periodic orbit: how the cycle permutes its own points when
// they are labelled 1..q from left to right. image[j-1] is the spatial index
// that point j maps to. Only single q-cycles are valid patterns.
struct CyclicPattern {
    int q = 0;
    std::vector<int> image; // size q, 1-based values

    // Throws "not a cycle" unless image is a permutation of {1..q} forming a
    // single cycle of length q.
    void validate() const;

    // Conjugate by the orientation flip j -> q+1-j.
    CyclicPattern reversed() const;

    int at(int j) const { return image[static_cast<size_t>(j) - 1]; } // 1-based

    bool operator==(const CyclicPattern& o) const { return q == o.q && image == o.image; }
    bool operator<(const CyclicPattern& o) const {
        if (q != o.q) return q < o.q;
        return image < o.image;
    }

    std::string to_json() const;
    static CyclicPattern from_json(const std::string& text);
};

// (p, q) with p = half the displacement-sign switch count. Deliberately kept
// unreduced: the forcing rule needs the multiplicities p/k and r/k, which
// reduction would destroy.
struct OverRotationPair {
    long long p = 0;
    long long q = 0;

    Rat value() const { return Rat(Int(p), Int(q)); }
    bool operator==(const OverRotationPair& o) const { return p == o.p && q == o.q; }
};

// Counts the points whose displacement sign flips in one step of the cycle:
// m = #{ j : sign(image[j]-j) != sign(image[image[j]]-image[j]) }, and returns
// (m/2, q). m is always even because sign flips around a cycle pair up.
// Throws "trivial cycle" for q = 1.
OverRotationPair over_rotation_pair(const CyclicPattern& pattern);

// p/q in lowest terms; lies in (0, 1/2].
Rat over_rotation_number(const CyclicPattern& pattern);

// The total order on periods: odds >= 3 descending in value, then doubled
// odds, quadrupled odds, ..., finally pure powers of two in decreasing order.
// Returns true iff m precedes n or m == n. Implemented arithmetically by
// splitting out the largest power of two.
bool sharkovsky_ge(long long m, long long n);

// Pair-forcing order: (p,q) forces (r,s) iff p/q < r/s, or the values are
// equal and the multiplicities u = p/k, v = r/k (k the reduced numerator)
// satisfy u >= v in the Sharkovsky order. Reflexive by construction.
bool orp_forces(const OverRotationPair& a, const OverRotationPair& b);

} // namespace rotor
