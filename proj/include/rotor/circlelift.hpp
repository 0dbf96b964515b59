#pragma once

#include <string>
#include <vector>

#include "rotor/rational.hpp"

namespace rotor {

// A degree-one lift of a circle map, stored as its piecewise-affine graph
// over one fundamental domain: breakpoints 0 = xs[0] < ... < xs[n-1] = 1 with
// values ys, ys[n-1] = ys[0] + 1, extended by F(x+1) = F(x)+1.
struct Lift {
    std::vector<Rat> xs, ys;

    void validate() const; // throws "invalid lift"
    Rat eval(const Rat& x) const;
    bool monotone() const; // nondecreasing

    std::string to_json() const;
    static Lift from_json(const std::string& text);
};

// The largest monotone map below F: min of the running minimum of F over
// [x, 1] and of its value at 0 shifted up one period. Degree one again.
Lift lower_monotone_map(const Lift& f);

// The smallest monotone map above F, symmetrically.
Lift upper_monotone_map(const Lift& f);

// Result of a rotation number computation: either exact (lo == hi == value)
// or a certified enclosure [lo, hi].
struct RotResult {
    bool exact = false;
    Rat value;
    Rat lo, hi;
};

// Rotation number of a monotone lift (throws "not monotone" otherwise).
// Exact when the denominator is small (found via displacement ranges of
// iterated composites); otherwise an enclosure of width at most about
// 1/precision from directed-rounding orbits on a dyadic grid.
RotResult rotation_number(const Lift& g, long long precision);

// Endpoints of the rotation interval of an arbitrary lift: the rotation
// numbers of the two monotone hull maps.
struct RotInterval {
    RotResult lower, upper;
};

RotInterval rotation_interval(const Lift& f, long long precision);

} // namespace rotor
