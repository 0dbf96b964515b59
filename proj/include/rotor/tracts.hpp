#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rotor/horseshoe.hpp"
#include "rotor/rational.hpp"

namespace rotor {

// An axis-aligned staircase in the parameter rectangle [1/2,1] x [0,1/2]:
// the chain of corners (1, b0), (a0, b0), (a0, b1), (a1, b1), ...,
// (aR, bR), (aR, 0), with both coordinate lists strictly decreasing. The
// staircase of p/q marks where, coming from the corner (1, 0), the
// over-rotation infimum first reaches p/q; its steps sit at the orbit
// extrema of the canonical over-twist family, one step per shift.
struct Staircase {
    long long p = 0, q = 0;
    std::vector<Rat> a, b; // step coordinates, sizes q - 2p + 1

    // The 2R + 3 corner points of the chain, right to left.
    std::vector<std::pair<Rat, Rat>> corners() const;

    // Horizontal step extents, rightmost first: 1 - a0, then a_{r-1} - a_r.
    std::vector<Rat> treads() const;

    // Vertical step extents, topmost first: b_r - b_{r+1}, ending at b_R.
    std::vector<Rat> rises() const;

    // True when (x, y) lies on the chain itself.
    bool contains(const Rat& x, const Rat& y) const;

    // True when (x, y) is strictly below the chain on the side of the
    // corner (1, 0): right of the final riser and under the local tread.
    bool below(const Rat& x, const Rat& y) const;

    // Exact squared euclidean distance from (x, y) to the chain.
    Rat dist2(const Rat& x, const Rat& y) const;

    // Nearest point of the chain in euclidean distance. Ties resolve to the
    // segment encountered first walking from the (1, b0) end.
    std::pair<Rat, Rat> nearest(const Rat& x, const Rat& y) const;

    // True when the two chains share no point.
    bool disjoint(const Staircase& other) const;

    std::string to_json() const;
    std::string to_svg() const;
};

// The staircase of p/q. Throws "invalid parameters" unless gcd(p,q) = 1 and
// 0 < 2p < q.
Staircase leading_set(long long p, long long q);

// Foot of the segment from (x, y) to the corner (1, 0) on the staircase,
// found by bisection: the returned point is on or above the chain, within
// tol of the true crossing. Throws "domain error" for tol <= 0 and
// "point below tract" when (x, y) already lies strictly below the chain.
std::pair<Rat, Rat> retract(const Staircase& z, const Rat& x, const Rat& y,
                            const Rat& tol);

// Certified retraction toward the corner (1, 0). A point whose infimum is
// exactly p/q already sits in the tract and comes back unchanged; a point
// with a larger infimum slides along the segment toward the corner until
// it meets the staircase, the far boundary of the tract. Throws
// "unconverged" when the estimate does not certify and "point outside
// tract" when the infimum is smaller than p/q.
std::pair<Rat, Rat> kappa_witness(const TruncationParams& par, long long p,
                                  long long q, const Rat& tol);

// The smallest displacement landing a parameter point on the staircase:
// dx to the left (alpha minus the chain point's alpha; certified inputs
// never produce a negative value) and dy vertically, upward when up is
// set. Nearest-point decomposition, so at most one of dx, dy is nonzero
// except when the landing spot is a chain corner.
struct AxisShift {
    Rat dx, dy;
    bool up = false;
};

// Certified displacement onto the staircase of p/q: verifies psi(par) ==
// p/q like kappa_witness, then decomposes the move to the nearest chain
// point. A point already on the chain gets the zero shift.
AxisShift axis_shift(const TruncationParams& par, long long p, long long q);

// A rectangular scan of the parameter rectangle: alpha_steps values from
// 1/2 to 1 crossed with beta_steps values from 0 to 1/2, both inclusive.
struct SweepSpec {
    int alpha_steps = 2, beta_steps = 2;
    int period_cap = 16;

    void validate() const; // throws "invalid parameters"
};

struct SweepCell {
    Rat alpha, beta, value;
    bool converged = false;
};

// Scan results, row-major: cell (i, j) holds alpha index i, beta index j.
struct SweepGrid {
    SweepSpec spec;
    std::vector<SweepCell> cells;

    const SweepCell& at(int i, int j) const; // throws "index out of range"

    // One line per cell after the header
    // alpha_num,alpha_den,beta_num,beta_den,psi_num,psi_den,converged.
    std::string to_csv() const;
};

// The same grid two ways: a plain loop, and rows spread over OpenMP threads.
// Both produce identical cells; the parallel kernel is the production path
// and the serial one is the reference it is tested against.
SweepGrid sweep_serial(const SweepSpec& spec);
SweepGrid sweep_parallel(const SweepSpec& spec);

// True when the cells with |value - target| <= tol form a single component
// under 8-neighbour adjacency. Throws "empty level set" when no cell
// qualifies.
bool level_set_connected(const SweepGrid& grid, const Rat& target, const Rat& tol);

} // namespace rotor
