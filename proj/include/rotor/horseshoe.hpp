#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rotor/pattern.hpp"
#include "rotor/piecewise.hpp"

namespace rotor {

// A point (alpha, beta) of the parameter rectangle [1/2,1] x [0,1/2].
struct TruncationParams {
    Rat alpha, beta;

    void validate() const; // throws "invalid parameters" outside the rectangle
};

// The three-branch full map on thirds: 3x, 2-3x, 3x-2.
Rat h2(const Rat& x); // throws "domain error" outside [0,1]

// The two-plateau truncation of h2 at heights alpha (top) and beta (bottom).
// Plateau endpoints belong to the plateau (the map agrees with h2 there).
Rat h_trunc(const TruncationParams& par, const Rat& x);

// The unique cycle of h2 with the given pattern, as its sorted point set.
// Found by assigning the three branches by spatial position; members of the
// over-twist family get their canonical branch cuts directly, other patterns
// are searched over all cut positions. Throws "itinerary infeasible" when no
// branch assignment is consistent, "trivial cycle" for q = 1.
std::vector<Rat> realize_cycle_in_h2(const CyclicPattern& pattern);

// (largest, smallest) point of the pattern's cycle inside h2.
std::pair<Rat, Rat> extrema_images(const CyclicPattern& pattern);

// One cycle of a truncated map.
struct TruncCycle {
    std::vector<Rat> points;  // in dynamical order
    int period = 0;
    bool through_plateau = false;
    std::optional<Rat> rho;   // over-rotation number; empty for fixed points
};

// All cycles of the truncated map with period at most period_cap: cycles
// avoiding both plateaus, solved exactly from pruned itinerary words, plus
// cycles through a plateau, found by following each plateau value until it
// re-enters its emitting plateau. Deduplicated by point set. Throws
// "enumeration budget exceeded" past node_budget.
std::vector<TruncCycle> enumerate_cycles_trunc(const TruncationParams& par, int period_cap,
                                               long long node_budget = 2000000);

struct PsiResult {
    Rat value;
    bool converged = false;
};

// Left endpoint of the over-rotation interval, estimated from above.
//
// When the forward orbits of both plateau values close up within an internal
// step budget, the value is exact: the minimum of the plateau-orbit cycle
// over-rotation numbers and the minimum mean switch weight over the covering
// graph of the invariant partition those orbits generate (so the horseshoe's
// 0 is reached even though no single cycle attains it), and converged is
// always true; period_cap plays no role on this route. 1/2 by convention on
// the base edges alpha = 1/2 and beta = 1/2, or when nothing of period >= 2
// exists.
//
// Otherwise the value is the minimum over-rotation number among cycles of
// period <= period_cap, and converged means the estimate is certified: either
// an over-twist cycle through a plateau attains it, or it coincides with the
// lower bound from the outer covering graph of the budget-truncated orbits.
PsiResult psi(const TruncationParams& par, int period_cap = 16,
              long long node_budget = 400000000);

// The estimate by cycle enumeration alone: minimum over-rotation number among
// cycles of period <= period_cap (1/2 when there are none or on the base
// edges). Converged when an over-twist cycle through a plateau attains the
// minimum, or the minimum survives halving the cap; pass check_stability =
// false to skip the halved-cap confirmation run (the value is unaffected).
PsiResult psi_enum(const TruncationParams& par, int period_cap,
                   long long node_budget = 400000000, bool check_stability = true);

} // namespace rotor
