#pragma once

#include <optional>
#include <vector>

#include "rotor/piecewise.hpp"

namespace rotor {

// A vertex of the covering graph: an open interval between consecutive
// partition points, with the constant sign of f(x)-x on it. Under
// CoverRule::invariant a flat cell keeps sign 0 and has no outgoing edges;
// under CoverRule::outer it carries its displacement sign (constant there
// too, because cells never contain a fixed point in their interior).
struct MarkovVertex {
    Rat lo, hi;
    int sign;
};

// Covering graph over a refined partition. Because vertices are consecutive
// intervals and the map is affine on each, the targets of a vertex form one
// contiguous index range, stored inclusively; first > last encodes none.
struct MarkovGraph {
    std::vector<MarkovVertex> verts;
    std::vector<std::pair<int, int>> cover;

    size_t size() const { return verts.size(); }
    bool has_edge(int u, int v) const {
        return cover[static_cast<size_t>(u)].first <= v &&
               v <= cover[static_cast<size_t>(u)].second;
    }
    std::vector<int> targets(int u) const {
        std::vector<int> out;
        for (int v = cover[static_cast<size_t>(u)].first;
             v <= cover[static_cast<size_t>(u)].second; ++v)
            out.push_back(v);
        return out;
    }
    // An edge counts 1 when the walk switches from positive to negative
    // displacement; a closed walk's over-rotation number is its mean weight.
    int weight(int u, int v) const {
        return verts[static_cast<size_t>(u)].sign > 0 &&
                       verts[static_cast<size_t>(v)].sign < 0
                   ? 1
                   : 0;
    }
};

// How covering edges are derived from a cell's image interval.
//
// invariant: the point set must be invariant under f, so every image interval
// is exactly a union of cells; u covers v when v lies inside image(u). Walks
// and genuine orbits then correspond (full Markov property).
//
// outer: no invariance required; u covers v when image(u) meets the closure
// of v, and flat cells point at the cells around their image value with the
// sign of their (constant-sign) displacement. Every true cycle is shadowed by
// a closed walk, so the minimum mean weight is a lower bound for the minimum
// over-rotation number, but spurious walks may undercut it.
enum class CoverRule { invariant, outer };

// Builds the covering graph of f over the partition refined by the fixed
// points of f. The point set must refine the linearity intervals of f, and
// under CoverRule::invariant must also be invariant under f; throws
// "invalid point set" otherwise.
MarkovGraph markov_graph(const PiecewiseMap& f, const std::vector<Rat>& pts,
                         CoverRule rule = CoverRule::invariant);

// Minimum cycle mean of the sign-switch weight, restricted to strongly
// connected components containing both displacement signs; loops confined to
// one sign belong to no genuine orbit and are excluded. nullopt when no such
// component exists.
std::optional<Rat> min_mean_mixed_cycle(const MarkovGraph& g);

} // namespace rotor
