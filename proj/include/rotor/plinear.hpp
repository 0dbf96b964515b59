#pragma once

#include <utility>
#include <vector>

#include "rotor/markov.hpp"
#include "rotor/pattern.hpp"
#include "rotor/piecewise.hpp"

namespace rotor {

// Connect-the-dots map of the pattern on normalized orbit points.
PiecewiseMap build_plinear(const CyclicPattern& pattern);

// Covering graph of the connect-the-dots map over its own orbit points.
MarkovGraph pattern_markov_graph(const CyclicPattern& pattern);

// Smallest over-rotation number among cycles the graph forces: the minimum
// mean of the sign-switch weight over loops in mixed components. Throws
// "internal error" when no admissible loop exists (cannot happen for graphs
// of genuine patterns).
Rat min_over_rotation(const MarkovGraph& g);
Rat min_over_rotation(const CyclicPattern& pattern);

// [r, 1/2]: everything between the forced minimum and 1/2 is realized.
std::pair<Rat, Rat> rotation_interval_of_pattern(const CyclicPattern& pattern);

// A pattern is over-twist when it forces nothing below its own value: pair
// coprime and min_over_rotation equal to p/q.
bool is_overtwist(const CyclicPattern& pattern);

// Patterns of all cycles of the connect-the-dots map with period at most
// period_cap, deduplicated, sorted by (q, image). Includes the fixed point as
// the one-point pattern. Throws "enumeration budget exceeded" when the walk
// search grows past node_budget.
std::vector<CyclicPattern> forced_cycles(const CyclicPattern& pattern, int period_cap,
                                         long long node_budget = 4000000);

} // namespace rotor
