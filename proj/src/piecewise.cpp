#include "rotor/piecewise.hpp"

#include <algorithm>
#include <numeric>

#include "rotor/error.hpp"

namespace rotor {

int theta(Sym s) {
    switch (s) {
        case Sym::I0:
        case Sym::I2: return 1;
        case Sym::I1: return -1;
        default: return 0;
    }
}

const char* sym_name(Sym s) {
    switch (s) {
        case Sym::I0: return "I0";
        case Sym::C1: return "C1";
        case Sym::I1: return "I1";
        case Sym::C2: return "C2";
        default: return "I2";
    }
}

void PiecewiseMap::normalize_and_validate() {
    if (pieces_.empty())
        throw RotorError("invalid parameters", "a map needs at least one piece");
    // Drop degenerate pieces, then merge collinear neighbours.
    std::vector<Piece> kept;
    for (const Piece& p : pieces_) {
        if (p.lo > p.hi)
            throw RotorError("invalid parameters", "piece with lo > hi");
        if (p.lo == p.hi) continue;
        if (!kept.empty() && kept.back().slope == p.slope && kept.back().icept == p.icept &&
            kept.back().hi == p.lo) {
            kept.back().hi = p.hi;
        } else {
            kept.push_back(p);
        }
    }
    pieces_ = std::move(kept);
    if (pieces_.empty())
        throw RotorError("invalid parameters", "all pieces degenerate");
    if (pieces_.front().lo != Rat(0) || pieces_.back().hi != Rat(1))
        throw RotorError("invalid parameters", "map must cover exactly [0,1]");
    for (size_t i = 0; i < pieces_.size(); ++i) {
        const Piece& p = pieces_[i];
        if (i + 1 < pieces_.size()) {
            const Piece& n = pieces_[i + 1];
            if (p.hi != n.lo)
                throw RotorError("invalid parameters", "pieces must be contiguous");
            if (p.eval(p.hi) != n.eval(n.lo))
                throw RotorError("invalid parameters", "map must be continuous");
        }
        Rat v1 = p.eval(p.lo), v2 = p.eval(p.hi);
        if (rat_min(v1, v2) < Rat(0) || rat_max(v1, v2) > Rat(1))
            throw RotorError("invalid parameters", "range must stay within [0,1]");
    }
}

PiecewiseMap::PiecewiseMap(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    normalize_and_validate();
}

PiecewiseMap PiecewiseMap::horseshoe2() { return truncation(Rat(1), Rat(0)); }

PiecewiseMap PiecewiseMap::truncation(const Rat& alpha, const Rat& beta) {
    if (alpha < Rat(Int(1), Int(2)) || alpha > Rat(1) || beta < Rat(0) ||
        beta > Rat(Int(1), Int(2)))
        throw RotorError("invalid parameters",
                         "need 1/2 <= alpha <= 1 and 0 <= beta <= 1/2");
    Rat third(Int(1), Int(3));
    Rat a1 = alpha * third;
    Rat a2 = Rat(Int(2), Int(3)) - alpha * third;
    Rat b1 = Rat(Int(2), Int(3)) - beta * third;
    Rat b2 = Rat(Int(2), Int(3)) + beta * third;
    PiecewiseMap m;
    m.pieces_ = {
        {Rat(0), a1, Rat(3), Rat(0)},
        {a1, a2, Rat(0), alpha},
        {a2, b1, Rat(-3), Rat(2)},
        {b1, b2, Rat(0), beta},
        {b2, Rat(1), Rat(3), Rat(-2)},
    };
    m.normalize_and_validate();
    m.symbols_ = true;
    m.c1lo_ = a1;
    m.c1hi_ = a2;
    m.c2lo_ = b1;
    m.c2hi_ = b2;
    return m;
}

PiecewiseMap PiecewiseMap::p_linear(const CyclicPattern& pattern) {
    pattern.validate();
    if (pattern.q < 2)
        throw RotorError("trivial cycle", "a fixed point spans no interval");
    int q = pattern.q;
    auto pt = [&](int j) { return Rat(Int(j - 1), Int(q - 1)); };
    PiecewiseMap m;
    for (int j = 1; j < q; ++j) {
        Rat slope(pattern.at(j + 1) - pattern.at(j));
        Piece p;
        p.lo = pt(j);
        p.hi = pt(j + 1);
        p.slope = slope;
        p.icept = pt(pattern.at(j)) - slope * p.lo;
        m.pieces_.push_back(p);
    }
    m.normalize_and_validate();
    return m;
}

const Piece& PiecewiseMap::piece_containing(const Rat& x) const {
    if (x < Rat(0) || x > Rat(1))
        throw RotorError("domain error", "argument outside [0,1]");
    // Last piece whose lo is <= x.
    size_t lo = 0, hi = pieces_.size() - 1;
    while (lo < hi) {
        size_t mid = (lo + hi + 1) / 2;
        if (pieces_[mid].lo <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    return pieces_[lo];
}

Rat PiecewiseMap::eval(const Rat& x) const { return piece_containing(x).eval(x); }

std::vector<Rat> PiecewiseMap::breakpoints() const {
    std::vector<Rat> out;
    for (const Piece& p : pieces_) out.push_back(p.lo);
    out.push_back(pieces_.back().hi);
    return out;
}

std::vector<Rat> PiecewiseMap::fixed_points() const {
    std::vector<Rat> out;
    for (const Piece& p : pieces_) {
        if (p.slope == Rat(1)) {
            if (p.icept == Rat(0))
                throw RotorError("internal error", "identity piece has no isolated fixed points");
            continue;
        }
        Rat x = p.icept / (Rat(1) - p.slope);
        if (p.lo <= x && x <= p.hi) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int PiecewiseMap::lap_count() const {
    int laps = 0, prev = 0;
    for (const Piece& p : pieces_) {
        int s = p.slope.sign();
        if (s == 0) continue;
        if (s != prev) ++laps;
        prev = s;
    }
    return laps;
}

Sym PiecewiseMap::symbol_at(const Rat& x) const {
    if (!symbols_)
        throw RotorError("not bimodal", "map carries no symbol regions");
    if (x < Rat(0) || x > Rat(1))
        throw RotorError("domain error", "argument outside [0,1]");
    if (x < c1lo_) return Sym::I0;
    if (x <= c1hi_) return Sym::C1;
    if (x < c2lo_) return Sym::I1;
    if (x <= c2hi_) return Sym::C2;
    return Sym::I2;
}

std::vector<Sym> PiecewiseMap::itinerary(const Rat& x, int n) const {
    if (n < 0)
        throw RotorError("domain error", "itinerary length must be nonnegative");
    std::vector<Sym> out;
    out.reserve(static_cast<size_t>(n));
    Rat cur = x;
    for (int i = 0; i < n; ++i) {
        out.push_back(symbol_at(cur));
        cur = eval(cur);
    }
    return out;
}

Sym SymSeq::at(size_t i) const {
    if (i < pre.size()) return pre[i];
    if (cycle.empty())
        throw RotorError("internal error", "symbol index past the end of a finite sequence");
    return cycle[(i - pre.size()) % cycle.size()];
}

ItinOrder compare_itineraries(const SymSeq& a, const SymSeq& b) {
    size_t bound;
    if (a.infinite() && b.infinite()) {
        // Two eventually periodic sequences agreeing past both transients and
        // through one common period of the cycles are identical.
        size_t la = a.pre.size() + a.cycle.size();
        size_t lb = b.pre.size() + b.cycle.size();
        bound = std::max(la, lb) + std::lcm(a.cycle.size(), b.cycle.size());
    } else {
        bound = std::min(a.infinite() ? SIZE_MAX : a.pre.size(),
                         b.infinite() ? SIZE_MAX : b.pre.size());
    }
    int sign = 1;
    for (size_t i = 0; i < bound; ++i) {
        Sym sa = a.at(i), sb = b.at(i);
        if (sa != sb) {
            if (sign == 0) return ItinOrder::undefined;
            int cmp = static_cast<int>(sa) < static_cast<int>(sb) ? -1 : 1;
            return sign * cmp > 0 ? ItinOrder::stronger : ItinOrder::weaker;
        }
        sign *= theta(sa);
    }
    if (a.infinite() && b.infinite()) return ItinOrder::equal;
    if (!a.infinite() && !b.infinite() && a.pre.size() == b.pre.size())
        return ItinOrder::equal;
    throw RotorError("insufficient length",
                     "sequences agree on the whole comparable range");
}

} // namespace rotor
