#include "rotor/horseshoe.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rotor/error.hpp"
#include "rotor/markov.hpp"
#include "rotor/overtwist.hpp"
#include "rotor/plinear.hpp"

namespace rotor {

void TruncationParams::validate() const {
    if (alpha < Rat(Int(1), Int(2)) || alpha > Rat(1) || beta < Rat(0) ||
        beta > Rat(Int(1), Int(2)))
        throw RotorError("invalid parameters",
                         "need 1/2 <= alpha <= 1 and 0 <= beta <= 1/2");
}

Rat h2(const Rat& x) {
    if (x < Rat(0) || x > Rat(1))
        throw RotorError("domain error", "argument outside [0,1]");
    if (x <= Rat(Int(1), Int(3))) return Rat(3) * x;
    if (x <= Rat(Int(2), Int(3))) return Rat(2) - Rat(3) * x;
    return Rat(3) * x - Rat(2);
}

Rat h_trunc(const TruncationParams& par, const Rat& x) {
    par.validate();
    if (x < Rat(0) || x > Rat(1))
        throw RotorError("domain error", "argument outside [0,1]");
    Rat third(Int(1), Int(3));
    Rat a1 = par.alpha * third;
    Rat a2 = Rat(Int(2), Int(3)) - par.alpha * third;
    Rat b1 = Rat(Int(2), Int(3)) - par.beta * third;
    Rat b2 = Rat(Int(2), Int(3)) + par.beta * third;
    if (a1 <= x && x <= a2) return par.alpha;
    if (b1 <= x && x <= b2) return par.beta;
    return h2(x);
}

namespace {

Rat branch_eval(int b, const Rat& x) {
    switch (b) {
        case 0: return Rat(3) * x;
        case 1: return Rat(2) - Rat(3) * x;
        default: return Rat(3) * x - Rat(2);
    }
}

// Attempts to realize the pattern with branch cuts (c1, c2): spatial points
// 1..c1 on the left branch, c1+1..c2 on the middle, the rest on the right.
// Returns the sorted points on success.
std::optional<std::vector<Rat>> try_cuts(const CyclicPattern& pat, int c1, int c2) {
    int q = pat.q;
    auto branch_of = [&](int j) { return j <= c1 ? 0 : (j <= c2 ? 1 : 2); };

    // Compose the branch maps along the cycle starting at point 1.
    Rat A(1), B(0);
    std::vector<int> order; // spatial labels in dynamical order
    int j = 1;
    for (int i = 0; i < q; ++i) {
        order.push_back(j);
        int b = branch_of(j);
        Rat s = (b == 1) ? Rat(-3) : Rat(3);
        Rat t = (b == 0) ? Rat(0) : (b == 1 ? Rat(2) : Rat(-2));
        A = s * A;
        B = s * B + t;
        j = pat.at(j);
    }
    Rat x1 = B / (Rat(1) - A);

    std::vector<Rat> pts(static_cast<size_t>(q)); // by spatial label
    Rat cur = x1;
    for (int i = 0; i < q; ++i) {
        pts[static_cast<size_t>(order[static_cast<size_t>(i)]) - 1] = cur;
        cur = branch_eval(branch_of(order[static_cast<size_t>(i)]), cur);
    }

    Rat third(Int(1), Int(3)), two_thirds(Int(2), Int(3));
    for (int k = 1; k <= q; ++k) {
        const Rat& x = pts[static_cast<size_t>(k) - 1];
        int b = branch_of(k);
        if (b == 0 && (x < Rat(0) || x > third)) return std::nullopt;
        if (b == 1 && (x < third || x > two_thirds)) return std::nullopt;
        if (b == 2 && (x < two_thirds || x > Rat(1))) return std::nullopt;
        if (k > 1 && !(pts[static_cast<size_t>(k) - 2] < x)) return std::nullopt;
        if (!(h2(x) == pts[static_cast<size_t>(pat.at(k)) - 1])) return std::nullopt;
    }
    return pts;
}

} // namespace

std::vector<Rat> realize_cycle_in_h2(const CyclicPattern& pattern) {
    pattern.validate();
    if (pattern.q < 2)
        throw RotorError("trivial cycle", "realize a fixed point directly");
    if (auto r = overtwist_index_of(pattern)) {
        OverRotationPair pr = over_rotation_pair(pattern);
        auto pts = try_cuts(pattern, static_cast<int>(*r),
                            static_cast<int>(*r + 2 * pr.p));
        if (!pts)
            throw RotorError("internal error",
                             "canonical cuts failed on an over-twist pattern");
        return *pts;
    }
    for (int c1 = 0; c1 <= pattern.q; ++c1)
        for (int c2 = c1; c2 <= pattern.q; ++c2)
            if (auto pts = try_cuts(pattern, c1, c2)) return *pts;
    throw RotorError("itinerary infeasible",
                     "no branch assignment yields this pattern");
}

std::pair<Rat, Rat> extrema_images(const CyclicPattern& pattern) {
    std::vector<Rat> pts = realize_cycle_in_h2(pattern);
    return {pts.back(), pts.front()};
}

namespace {

struct Dom {
    Rat lo, hi;
    bool lo_open, hi_open;

    bool empty() const {
        if (lo > hi) return true;
        if (lo == hi) return lo_open || hi_open;
        return false;
    }
    bool contains(const Rat& x) const {
        if (x < lo || x > hi) return false;
        if (x == lo && lo_open) return false;
        if (x == hi && hi_open) return false;
        return true;
    }
};

struct TruncGeometry {
    Rat a1, a2, b1, b2;
    Dom dom[3];

    explicit TruncGeometry(const TruncationParams& par) {
        Rat third(Int(1), Int(3)), two_thirds(Int(2), Int(3));
        a1 = par.alpha * third;
        a2 = two_thirds - par.alpha * third;
        b1 = two_thirds - par.beta * third;
        b2 = two_thirds + par.beta * third;
        dom[0] = {Rat(0), a1, false, true};
        dom[1] = {a2, b1, true, true};
        dom[2] = {b2, Rat(1), true, false};
    }

    bool in_plateau(const Rat& x) const {
        return (a1 <= x && x <= a2) || (b1 <= x && x <= b2);
    }
};

// Image of an open/closed interval under branch b; openness follows the
// endpoints through the affine map.
Dom branch_image(int b, const Dom& d) {
    Rat y1 = branch_eval(b, d.lo), y2 = branch_eval(b, d.hi);
    bool o1 = d.lo_open, o2 = d.hi_open;
    if (y2 < y1) {
        std::swap(y1, y2);
        std::swap(o1, o2);
    }
    return {y1, y2, o1, o2};
}

Dom intersect(const Dom& a, const Dom& b) {
    Dom r;
    if (a.lo > b.lo) {
        r.lo = a.lo;
        r.lo_open = a.lo_open;
    } else if (b.lo > a.lo) {
        r.lo = b.lo;
        r.lo_open = b.lo_open;
    } else {
        r.lo = a.lo;
        r.lo_open = a.lo_open || b.lo_open;
    }
    if (a.hi < b.hi) {
        r.hi = a.hi;
        r.hi_open = a.hi_open;
    } else if (b.hi < a.hi) {
        r.hi = b.hi;
        r.hi_open = b.hi_open;
    } else {
        r.hi = a.hi;
        r.hi_open = a.hi_open || b.hi_open;
    }
    return r;
}

bool word_is_canonical_primitive(const std::vector<int>& w) {
    size_t k = w.size();
    for (size_t s = 1; s < k; ++s) {
        bool smaller = false, larger = false;
        for (size_t i = 0; i < k; ++i) {
            int a = w[(i + s) % k], b = w[i];
            if (a < b) { smaller = true; break; }
            if (a > b) { larger = true; break; }
        }
        if (smaller) return false;
        if (!larger) return false; // equal rotation
    }
    return true;
}

Rat rho_of_orbit(const std::vector<Rat>& pts) {
    int k = static_cast<int>(pts.size());
    int m = 0;
    for (int i = 0; i < k; ++i) {
        const Rat& a = pts[static_cast<size_t>(i)];
        const Rat& b = pts[static_cast<size_t>((i + 1) % k)];
        const Rat& c = pts[static_cast<size_t>((i + 2) % k)];
        int d1 = (b - a).sign(), d2 = (c - b).sign();
        if (d1 != d2) ++m;
    }
    return Rat(Int(m / 2), Int(k));
}

// The spatial pattern of a cycle given in dynamical order.
CyclicPattern pattern_of_cycle(const std::vector<Rat>& pts) {
    std::vector<Rat> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    auto rank = [&sorted](const Rat& x) {
        return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), x) -
                                sorted.begin()) +
               1;
    };
    int q = static_cast<int>(pts.size());
    CyclicPattern pat;
    pat.q = q;
    pat.image.assign(static_cast<size_t>(q), 0);
    for (int i = 0; i < q; ++i)
        pat.image[static_cast<size_t>(rank(pts[static_cast<size_t>(i)])) - 1] =
            rank(pts[static_cast<size_t>((i + 1) % q)]);
    return pat;
}

// Exact search for cycles avoiding both plateaus. A word of branch choices
// pins down an affine composite x -> A x + B with A = +-3^k and integer B;
// the word's cylinder maps onto the tracked reach interval bijectively, so
// the composite's fixed point closes a genuine cycle exactly when it lies in
// reach. Only canonical rotations of primitive words are emitted, one per
// cycle.
struct TruncSearch {
    const TruncGeometry& geo;
    int cap;
    long long budget;
    long long nodes = 0;
    std::vector<int> word;
    Dom reach;      // exact image of the current cylinder
    Int A{1}, B{0}; // composite along the word
    std::vector<TruncCycle> out;

    bool closes() const {
        Rat x{B, Int(1) - A}; // |A| = 3^k >= 3, never 1
        if (x < reach.lo || (x == reach.lo && reach.lo_open)) return false;
        if (x > reach.hi || (x == reach.hi && reach.hi_open)) return false;
        return true;
    }

    void record() {
        if (!word_is_canonical_primitive(word)) return;
        Rat x0{B, Int(1) - A};
        std::vector<Rat> orbit;
        Rat cur = x0;
        for (int b : word) {
            orbit.push_back(cur);
            cur = branch_eval(b, cur);
        }
        if (!(cur == x0))
            throw RotorError("internal error", "cycle fixed point failed to close");
        TruncCycle c;
        c.points = std::move(orbit);
        c.period = static_cast<int>(word.size());
        c.through_plateau = false;
        if (c.period >= 2) c.rho = rho_of_orbit(c.points);
        out.push_back(std::move(c));
    }

    void dfs() {
        if (++nodes > budget)
            throw RotorError("enumeration budget exceeded",
                             "cycle search past the node budget");
        if (!word.empty() && closes()) record();
        if (static_cast<int>(word.size()) >= cap) return;
        // A canonical word starts at its least symbol, so children below the
        // first symbol can never extend to one.
        for (int b = word.empty() ? 0 : word[0]; b < 3; ++b) {
            Dom next = word.empty() ? geo.dom[b] : intersect(reach, geo.dom[b]);
            if (next.empty()) continue;
            Dom save_reach = reach;
            Int sa = A, sb = B;
            int s = (b == 1) ? -3 : 3;
            int t = (b == 0) ? 0 : (b == 1 ? 2 : -2);
            word.push_back(b);
            reach = branch_image(b, next);
            A = s * sa;
            B = s * sb + t;
            dfs();
            word.pop_back();
            reach = save_reach;
            A = std::move(sa);
            B = std::move(sb);
        }
    }
};

// Periodic orbits through a plateau. A cycle meets a plateau in at most one
// point (two would share the image), and that point's image is the plateau's
// height, so every such cycle is the forward orbit of a plateau value
// followed until it first re-enters the emitting plateau. The walk stops
// when a value repeats (the orbit fell into a cycle missing that plateau)
// or after period_cap steps.
std::vector<TruncCycle> value_orbit_cycles(const TruncationParams& par, int period_cap) {
    TruncGeometry geo(par);
    std::vector<TruncCycle> out;
    std::set<std::vector<Rat>> seen; // sorted point sets: one cycle can thread both plateaus
    struct Source {
        Rat value, plo, phi;
    };
    const Source sources[2] = {{par.alpha, geo.a1, geo.a2}, {par.beta, geo.b1, geo.b2}};
    for (const Source& src : sources) {
        std::vector<Rat> pts;
        std::set<Rat> visited;
        Rat cur = src.value;
        for (int k = 0; k < period_cap; ++k) {
            if (!visited.insert(cur).second) break;
            pts.push_back(cur);
            if (src.plo <= cur && cur <= src.phi) {
                std::vector<Rat> key = pts;
                std::sort(key.begin(), key.end());
                if (seen.insert(key).second) {
                    TruncCycle c;
                    c.points = pts;
                    c.period = static_cast<int>(pts.size());
                    c.through_plateau = true;
                    if (c.period >= 2) c.rho = rho_of_orbit(pts);
                    out.push_back(std::move(c));
                }
                break;
            }
            cur = h_trunc(par, cur);
        }
    }
    return out;
}

// Forward orbit of x0 under the truncated map, cut off at step_budget points.
struct OrbitScan {
    std::vector<Rat> pts;
    size_t entry = 0; // index where the eventual cycle starts, when closed
    bool closed = false;
};

OrbitScan scan_forward_orbit(const TruncationParams& par, const Rat& x0, long long step_budget) {
    OrbitScan scan;
    std::map<Rat, size_t> seen;
    Rat cur = x0;
    while (static_cast<long long>(scan.pts.size()) < step_budget) {
        auto it = seen.find(cur);
        if (it != seen.end()) {
            scan.entry = it->second;
            scan.closed = true;
            return scan;
        }
        seen.emplace(cur, scan.pts.size());
        scan.pts.push_back(cur);
        cur = h_trunc(par, cur);
    }
    return scan;
}

// ---------------------------------------------------------------------------
// Fast minimum-rho search. Same tree as TruncSearch, but in machine integers
// over the fixed common denominator of the plateau breakpoints, and over a
// four-letter alphabet: the middle branch is split at its fixed point 1/2 so
// that every symbol carries a constant displacement sign, which makes the
// over-rotation number of a closed word a pure symbol count. No orbit points
// are materialized and no canonicity filter is needed: a cycle found through
// several rotations reports the same rho each time, and words with no
// plus-to-minus transition (which only close on repeated fixed points) are
// skipped, so the running minimum is exact. A branch-and-bound cut prunes a
// subtree once even the best completion, at least max(sc,1) transitions over
// at most cap symbols, can no longer beat the minimum so far.

struct FastDom {
    long long lo, hi; // numerators over the common denominator
    bool lo_open, hi_open;

    bool empty() const { return lo > hi || (lo == hi && (lo_open || hi_open)); }
};

struct FastBranch {
    FastDom dom;
    int slope;         // +-3
    int icept;         // branch intercept as a plain value: 0, 2 or -2
    long long icept_n; // the same intercept scaled by the denominator
    int sign;          // displacement sign, constant on the symbol
};

struct FastResult {
    std::optional<Rat> min_rho;
    bool complete = true;
};

struct FastSearch {
    FastBranch br[4];
    long long D;
    int cap;
    long long budget;
    long long nodes = 0;
    bool complete = true;
    long long bn = 0, bd = 1; // best rho found so far, when have_best
    bool have_best = false;
    int depth = 0;
    int bfirst = 0, first_sign = 0, last_sign = 0;
    int sc = 0;             // plus-to-minus transitions along the word
    long long A = 1, B = 0; // composite x -> A x + B, A = +-3^depth

    static FastDom fd_intersect(const FastDom& a, const FastDom& b) {
        FastDom r;
        if (a.lo > b.lo) {
            r.lo = a.lo;
            r.lo_open = a.lo_open;
        } else if (b.lo > a.lo) {
            r.lo = b.lo;
            r.lo_open = b.lo_open;
        } else {
            r.lo = a.lo;
            r.lo_open = a.lo_open || b.lo_open;
        }
        if (a.hi < b.hi) {
            r.hi = a.hi;
            r.hi_open = a.hi_open;
        } else if (b.hi < a.hi) {
            r.hi = b.hi;
            r.hi_open = b.hi_open;
        } else {
            r.hi = a.hi;
            r.hi_open = a.hi_open || b.hi_open;
        }
        return r;
    }

    static FastDom apply(const FastBranch& fb, const FastDom& d) {
        if (fb.slope > 0)
            return {3 * d.lo + fb.icept_n, 3 * d.hi + fb.icept_n, d.lo_open, d.hi_open};
        return {-3 * d.hi + fb.icept_n, -3 * d.lo + fb.icept_n, d.hi_open, d.lo_open};
    }

    // Sign of (B/(1-A) - n/D), the fixed point against a grid bound.
    int cmp_fp(long long n, long long den) const {
        __int128 d = static_cast<__int128>(B) * D - static_cast<__int128>(n) * den;
        int s = d == 0 ? 0 : (d < 0 ? -1 : 1);
        return den > 0 ? s : -s;
    }

    bool closes(const FastDom& r) const {
        long long den = 1 - A;
        int cl = cmp_fp(r.lo, den);
        if (cl < 0 || (cl == 0 && r.lo_open)) return false;
        int ch = cmp_fp(r.hi, den);
        if (ch > 0 || (ch == 0 && r.hi_open)) return false;
        return true;
    }

    void consider(long long p, long long k) {
        if (!have_best || static_cast<__int128>(p) * bd < static_cast<__int128>(bn) * k) {
            bn = p;
            bd = k;
            have_best = true;
        }
    }

    void dfs(const FastDom& reach) {
        if (nodes >= budget) {
            complete = false;
            return;
        }
        ++nodes;
        if (depth >= 2) {
            int p = sc + ((last_sign > 0 && first_sign < 0) ? 1 : 0);
            if (p >= 1 && closes(reach)) consider(p, depth);
        }
        if (depth >= cap) return;
        if (have_best &&
            static_cast<__int128>(std::max(sc, 1)) * bd >= static_cast<__int128>(bn) * cap)
            return;
        for (int b = depth == 0 ? 0 : bfirst; b < 4; ++b) {
            const FastBranch& fb = br[b];
            FastDom next = depth == 0 ? fb.dom : fd_intersect(reach, fb.dom);
            if (next.empty()) continue;
            FastDom img = apply(fb, next);
            long long sa = A, sb = B;
            int s_sc = sc, s_last = last_sign;
            A = sa * fb.slope;
            B = sb * fb.slope + fb.icept;
            if (depth == 0) {
                bfirst = b;
                first_sign = fb.sign;
            } else if (last_sign > 0 && fb.sign < 0) {
                ++sc;
            }
            last_sign = fb.sign;
            ++depth;
            dfs(img);
            --depth;
            A = sa;
            B = sb;
            sc = s_sc;
            last_sign = s_last;
            if (!complete) return;
        }
    }
};

// Caps under which every quantity in FastSearch fits its integer type:
// |A| = 3^cap and |B| < 3^cap stay below 2^62, and the cross products in
// cmp_fp stay below 2^127.
constexpr int kFastCapLimit = 38;
constexpr long long kFastDenLimit = 2000000000000LL;

// Minimum rho over plateau-avoiding cycles of period <= cap, via the integer
// search when the breakpoint denominators allow it. Returns nullopt when they
// do not (the caller falls back to the exact search).
std::optional<FastResult> fast_min_rho(const TruncationParams& par, int cap, long long budget) {
    if (cap > kFastCapLimit) return std::nullopt;
    TruncGeometry geo(par);
    Int dz = 2;
    for (const Rat* r : {&geo.a1, &geo.a2, &geo.b1, &geo.b2})
        dz = boost::multiprecision::lcm(dz, r->den());
    if (dz > kFastDenLimit) return std::nullopt;
    long long D = dz.convert_to<long long>();
    auto scaled = [&](const Rat& x) -> long long {
        Rat v = x * Rat(Int(D));
        if (!v.is_integer())
            throw RotorError("internal error", "breakpoint off the common grid");
        return v.num().convert_to<long long>();
    };
    long long na1 = scaled(geo.a1), na2 = scaled(geo.a2);
    long long nb1 = scaled(geo.b1), nb2 = scaled(geo.b2);
    long long nh = D / 2;

    FastSearch fs;
    fs.br[0] = {{0, na1, false, true}, 3, 0, 0, 1};
    fs.br[1] = {{na2, nh, true, true}, -3, 2, 2 * D, 1};
    fs.br[2] = {{nh, nb1, true, true}, -3, 2, 2 * D, -1};
    fs.br[3] = {{nb2, D, true, false}, 3, -2, -2 * D, -1};
    fs.D = D;
    fs.cap = cap;
    fs.budget = budget;
    fs.dfs(FastDom{0, D, false, false}); // root reach is ignored at depth 0

    FastResult fr;
    fr.complete = fs.complete;
    if (fs.have_best) fr.min_rho = Rat(Int(fs.bn), Int(fs.bd));
    return fr;
}

// Minimum over-rotation number among all cycles of period <= cap, with a
// convergence witness: whether an over-twist cycle through a plateau attains
// the minimum, and whether the plateau-avoiding search ran to completion.
struct EnumEstimate {
    std::optional<Rat> min_rho;
    bool witnessed = false;
    bool complete = true;
};

EnumEstimate enumeration_estimate(const TruncationParams& par, int cap, long long budget) {
    EnumEstimate e;
    if (auto fr = fast_min_rho(par, cap, budget)) {
        e.min_rho = fr->min_rho;
        e.complete = fr->complete;
    } else {
        TruncGeometry geo(par);
        TruncSearch s{geo, cap, budget};
        try {
            s.dfs();
        } catch (const RotorError&) {
            e.complete = false;
        }
        for (const auto& c : s.out)
            if (c.rho && (!e.min_rho || *c.rho < *e.min_rho)) e.min_rho = *c.rho;
    }
    std::vector<TruncCycle> vcycles = value_orbit_cycles(par, cap);
    for (const auto& c : vcycles)
        if (c.rho && (!e.min_rho || *c.rho < *e.min_rho)) e.min_rho = *c.rho;
    if (e.min_rho)
        for (const auto& c : vcycles)
            if (c.rho && *c.rho == *e.min_rho && is_overtwist(pattern_of_cycle(c.points))) {
                e.witnessed = true;
                break;
            }
    return e;
}

} // namespace

std::vector<TruncCycle> enumerate_cycles_trunc(const TruncationParams& par, int period_cap,
                                               long long node_budget) {
    par.validate();
    if (period_cap < 1)
        throw RotorError("domain error", "period cap must be at least 1");
    TruncGeometry geo(par);
    TruncSearch search{geo, period_cap, node_budget};
    search.dfs();
    std::vector<TruncCycle> out = std::move(search.out);
    // Plateau-avoiding and plateau-threading cycles are disjoint families, so
    // the merge needs no cross-checking.
    for (auto& c : value_orbit_cycles(par, period_cap)) out.push_back(std::move(c));
    std::sort(out.begin(), out.end(), [](const TruncCycle& a, const TruncCycle& b) {
        if (a.period != b.period) return a.period < b.period;
        return a.points < b.points;
    });
    return out;
}

PsiResult psi(const TruncationParams& par, int period_cap, long long node_budget) {
    par.validate();
    Rat half(Int(1), Int(2));
    if (par.alpha == half || par.beta == half) return {half, true};

    std::optional<Rat> best;
    auto consider = [&best](const Rat& v) {
        if (!best || v < *best) best = v;
    };

    constexpr long long kOrbitBudget = 1500;
    OrbitScan sa = scan_forward_orbit(par, par.alpha, kOrbitBudget);
    OrbitScan sb = scan_forward_orbit(par, par.beta, kOrbitBudget);

    TruncGeometry geo(par);
    std::vector<Rat> partition{Rat(0), Rat(1), geo.a1, geo.a2, geo.b1, geo.b2};
    for (const OrbitScan* s : {&sa, &sb})
        partition.insert(partition.end(), s->pts.begin(), s->pts.end());
    std::sort(partition.begin(), partition.end());
    partition.erase(std::unique(partition.begin(), partition.end()), partition.end());
    PiecewiseMap f = PiecewiseMap::truncation(par.alpha, par.beta);

    if (sa.closed && sb.closed) {
        // Exact route: the plateau-value orbits close up, so they generate a
        // finite invariant partition and the infimum is the smaller of the
        // orbits' own cycle values and the minimum mean switch weight over
        // the partition's covering graph.
        for (const OrbitScan* s : {&sa, &sb}) {
            size_t period = s->pts.size() - s->entry;
            if (period >= 2)
                consider(rho_of_orbit(std::vector<Rat>(
                    s->pts.begin() + static_cast<long>(s->entry), s->pts.end())));
        }
        MarkovGraph g = markov_graph(f, partition);
        if (auto mu = min_mean_mixed_cycle(g)) consider(*mu);
        return {best.value_or(half), true};
    }

    // Estimate from above by bounded cycle enumeration, certified either by
    // an over-twist witness or by the matching lower bound from the outer
    // covering graph of the truncated orbits.
    EnumEstimate e = enumeration_estimate(par, std::max(period_cap, 2), node_budget);
    Rat value = e.min_rho ? *e.min_rho : half;
    bool converged = e.witnessed;
    if (!converged) {
        MarkovGraph g = markov_graph(f, partition, CoverRule::outer);
        auto lower = min_mean_mixed_cycle(g);
        if (lower && *lower == value) converged = true;
    }
    return {value, converged};
}

PsiResult psi_enum(const TruncationParams& par, int period_cap, long long node_budget,
                   bool check_stability) {
    par.validate();
    if (period_cap < 1)
        throw RotorError("domain error", "period cap must be at least 1");
    Rat half(Int(1), Int(2));
    if (par.alpha == half || par.beta == half) return {half, true};

    EnumEstimate e = enumeration_estimate(par, period_cap, node_budget);
    if (!e.min_rho) return {half, e.complete}; // nothing of period >= 2 up to the cap
    bool converged = e.witnessed;
    if (!converged && check_stability && period_cap / 2 >= 2) {
        EnumEstimate h = enumeration_estimate(par, period_cap / 2, node_budget);
        if (e.complete && h.complete && h.min_rho && *h.min_rho == *e.min_rho) converged = true;
    }
    return {*e.min_rho, converged};
}

} // namespace rotor
