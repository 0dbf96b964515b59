#pragma once

#include <vector>

#include "rotor/pattern.hpp"
#include "rotor/rational.hpp"

namespace rotor {

// One affine piece of a continuous map: f(x) = slope*x + icept on [lo, hi].
struct Piece {
    Rat lo, hi, slope, icept;

    Rat eval(const Rat& x) const { return slope * x + icept; }
};

// Address symbols for maps with at most two turning regions, ordered left to
// right. C1 and C2 are the closed critical regions (a plateau, or a single
// turning point when the plateau is degenerate).
enum class Sym : int { I0 = 0, C1 = 1, I1 = 2, C2 = 3, I2 = 4 };

// Signature weight of a symbol: +1 on increasing laps, -1 on the decreasing
// lap, 0 on critical regions.
int theta(Sym s);

const char* sym_name(Sym s);

// A continuous piecewise-affine self-map of [0,1], held exactly. Maps built
// by the named constructors carry symbol regions when the shape supports
// itineraries (increasing first lap, at most three laps).
class PiecewiseMap {
public:
    // The full tent-of-three-branches map: 3x, 2-3x, 3x-2 on thirds.
    static PiecewiseMap horseshoe2();

    // The two-plateau truncation: top plateau at height alpha over
    // [alpha/3, 2/3-alpha/3], bottom plateau at height beta over
    // [2/3-beta/3, 2/3+beta/3]. Requires 1/2 <= alpha <= 1, 0 <= beta <= 1/2;
    // throws "invalid parameters" otherwise.
    static PiecewiseMap truncation(const Rat& alpha, const Rat& beta);

    // The connect-the-dots map of a pattern on the normalized orbit points
    // (j-1)/(q-1). Throws "trivial cycle" for q = 1.
    static PiecewiseMap p_linear(const CyclicPattern& pattern);

    // Generic constructor for tests and composition; validates contiguity,
    // continuity, domain [0,1] and range within [0,1].
    explicit PiecewiseMap(std::vector<Piece> pieces);

    Rat eval(const Rat& x) const; // throws "domain error" outside [0,1]

    const std::vector<Piece>& pieces() const { return pieces_; }
    const Piece& piece_containing(const Rat& x) const;
    std::vector<Rat> breakpoints() const;

    // All fixed points, sorted. Throws "internal error" on an identity piece
    // (cannot arise from the named constructors).
    std::vector<Rat> fixed_points() const;

    // Number of maximal monotone laps, flats not counted.
    int lap_count() const;

    bool has_symbols() const { return symbols_; }
    Sym symbol_at(const Rat& x) const;                  // throws "not bimodal" without symbol data
    std::vector<Sym> itinerary(const Rat& x, int n) const;

private:
    PiecewiseMap() = default;
    void normalize_and_validate();

    std::vector<Piece> pieces_;
    bool symbols_ = false;
    Rat c1lo_, c1hi_, c2lo_, c2hi_;
};

// A symbol sequence, finite (cycle empty) or eventually periodic.
struct SymSeq {
    std::vector<Sym> pre;
    std::vector<Sym> cycle;

    bool infinite() const { return !cycle.empty(); }
    bool available(size_t i) const { return infinite() || i < pre.size(); }
    Sym at(size_t i) const;
};

enum class ItinOrder { stronger, weaker, equal, undefined };

// Signed lexicographic comparison: at the first discrepancy kappa the sign of
// the product of theta over the shared prefix orients the outcome; a zero
// product is undefined. Sequences that agree on all compared symbols are
// equal only when that is provable (same finite length, or both eventually
// periodic and compared beyond the combined period); otherwise throws
// "insufficient length".
ItinOrder compare_itineraries(const SymSeq& a, const SymSeq& b);

} // namespace rotor
