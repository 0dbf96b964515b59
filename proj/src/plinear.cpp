#include "rotor/plinear.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "rotor/error.hpp"

namespace rotor {

PiecewiseMap build_plinear(const CyclicPattern& pattern) {
    return PiecewiseMap::p_linear(pattern);
}

MarkovGraph pattern_markov_graph(const CyclicPattern& pattern) {
    PiecewiseMap f = build_plinear(pattern);
    std::vector<Rat> pts;
    for (int j = 0; j < pattern.q; ++j)
        pts.push_back(Rat(Int(j), Int(pattern.q - 1)));
    return markov_graph(f, pts);
}

Rat min_over_rotation(const MarkovGraph& g) {
    auto mu = min_mean_mixed_cycle(g);
    if (!mu)
        throw RotorError("internal error",
                         "covering graph admits no loop through both displacement signs");
    return *mu;
}

Rat min_over_rotation(const CyclicPattern& pattern) {
    return min_over_rotation(pattern_markov_graph(pattern));
}

std::pair<Rat, Rat> rotation_interval_of_pattern(const CyclicPattern& pattern) {
    return {min_over_rotation(pattern), Rat(Int(1), Int(2))};
}

bool is_overtwist(const CyclicPattern& pattern) {
    OverRotationPair pr = over_rotation_pair(pattern);
    if (std::gcd(pr.p, pr.q) != 1) return false;
    return min_over_rotation(pattern) == pr.value();
}

namespace {

// Orbit of x under f, assuming it closes up; returns the cycle through x.
std::vector<Rat> cycle_through(const PiecewiseMap& f, const Rat& x) {
    std::vector<Rat> orbit{x};
    Rat cur = f.eval(x);
    while (!(cur == x)) {
        orbit.push_back(cur);
        cur = f.eval(cur);
        if (orbit.size() > 100000)
            throw RotorError("internal error", "orbit failed to close");
    }
    return orbit;
}

CyclicPattern pattern_of_orbit(const std::vector<Rat>& orbit) {
    int q = static_cast<int>(orbit.size());
    std::vector<Rat> sorted = orbit;
    std::sort(sorted.begin(), sorted.end());
    auto rank = [&sorted](const Rat& x) {
        return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), x) -
                                sorted.begin()) +
               1;
    };
    CyclicPattern pat;
    pat.q = q;
    pat.image.assign(static_cast<size_t>(q), 0);
    for (int i = 0; i < q; ++i)
        pat.image[static_cast<size_t>(rank(orbit[static_cast<size_t>(i)])) - 1] =
            rank(orbit[static_cast<size_t>((i + 1) % q)]);
    pat.validate();
    return pat;
}

// True if word is its own lexicographically smallest rotation and not a
// power of a shorter word.
bool canonical_primitive(const std::vector<int>& w) {
    size_t k = w.size();
    for (size_t s = 1; s < k; ++s) {
        bool smaller = false, larger = false;
        for (size_t i = 0; i < k; ++i) {
            int a = w[(i + s) % k], b = w[i];
            if (a < b) { smaller = true; break; }
            if (a > b) { larger = true; break; }
        }
        if (smaller) return false;   // a rotation is smaller
        if (!larger && !smaller) return false; // equal rotation: non-primitive
    }
    return true;
}

struct WalkSearch {
    const MarkovGraph& g;
    const PiecewiseMap& f;
    int cap;
    long long budget;
    long long nodes = 0;
    std::vector<int> path;
    std::set<CyclicPattern> found;
    // Each vertex interval sits inside a single affine piece; resolve that
    // piece once instead of searching per walk step.
    std::vector<const Piece*> vert_piece;

    void prime() {
        vert_piece.clear();
        for (const MarkovVertex& vt : g.verts)
            vert_piece.push_back(&f.piece_containing(vt.lo));
    }

    void record(const std::vector<int>& word) {
        if (!canonical_primitive(word)) return;
        // Compose the affine branch maps along the walk.
        Rat A(1), B(0);
        std::vector<const Piece*> br;
        for (int v : word) {
            const Piece& p = *vert_piece[static_cast<size_t>(v)];
            br.push_back(&p);
            A = p.slope * A;
            B = p.slope * B + p.icept;
        }
        Rat x0;
        if (A == Rat(1)) {
            if (!(B == Rat(0))) return; // no solution
            // Whole admissible cylinder is periodic; take its midpoint.
            Rat lo(0), hi(1);
            Rat a(1), b(0); // partial composite
            for (size_t i = 0; i < word.size(); ++i) {
                const MarkovVertex& vt = g.verts[static_cast<size_t>(word[i])];
                // Constrain a*x+b to [vt.lo, vt.hi].
                Rat c1 = (vt.lo - b) / a, c2 = (vt.hi - b) / a;
                if (c2 < c1) std::swap(c1, c2);
                lo = rat_max(lo, c1);
                hi = rat_min(hi, c2);
                if (hi < lo) return;
                const Piece* p = br[i];
                b = p->slope * b + p->icept;
                a = p->slope * a;
            }
            x0 = (lo + hi) / Rat(2);
        } else {
            x0 = B / (Rat(1) - A);
        }
        // Verify the orbit really follows the walk through closed vertices.
        Rat cur = x0;
        for (size_t i = 0; i < word.size(); ++i) {
            const MarkovVertex& vt = g.verts[static_cast<size_t>(word[i])];
            if (cur < vt.lo || cur > vt.hi) return;
            cur = br[i]->eval(cur);
        }
        if (!(cur == x0)) return;
        found.insert(pattern_of_orbit(cycle_through(f, x0)));
    }

    void dfs(int v, int s) {
        if (++nodes > budget)
            throw RotorError("enumeration budget exceeded",
                             "closed walk search past the node budget");
        path.push_back(v);
        auto [c1, c2] = g.cover[static_cast<size_t>(v)];
        for (int t = std::max(c1, s); t <= c2; ++t) {
            if (t == s) record(path);
            if (static_cast<int>(path.size()) < cap) dfs(t, s);
        }
        path.pop_back();
    }
};

} // namespace

std::vector<CyclicPattern> forced_cycles(const CyclicPattern& pattern, int period_cap,
                                         long long node_budget) {
    pattern.validate();
    if (period_cap < 1)
        throw RotorError("domain error", "period cap must be at least 1");
    PiecewiseMap f = build_plinear(pattern);
    std::vector<Rat> pts;
    for (int j = 0; j < pattern.q; ++j)
        pts.push_back(Rat(Int(j), Int(pattern.q - 1)));
    MarkovGraph g = markov_graph(f, pts);

    WalkSearch search{g, f, period_cap, node_budget};
    search.prime();
    for (int s = 0; s < static_cast<int>(g.size()); ++s) search.dfs(s, s);

    // Every interval self-map here has a fixed point; list its pattern too.
    std::set<CyclicPattern> out = std::move(search.found);
    out.insert(CyclicPattern{1, {1}});

    std::vector<CyclicPattern> res(out.begin(), out.end());
    std::vector<CyclicPattern> kept;
    for (const auto& p : res)
        if (p.q <= period_cap) kept.push_back(p);
    return kept;
}

} // namespace rotor
