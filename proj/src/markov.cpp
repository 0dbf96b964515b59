#include "rotor/markov.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>

#include "rotor/error.hpp"

namespace rotor {

MarkovGraph markov_graph(const PiecewiseMap& f, const std::vector<Rat>& pts, CoverRule rule) {
    if (pts.empty())
        throw RotorError("invalid point set", "partition must be nonempty");
    std::vector<Rat> part = pts;
    for (const Rat& fx : f.fixed_points())
        if (pts.front() <= fx && fx <= pts.back()) part.push_back(fx);
    std::sort(part.begin(), part.end());
    part.erase(std::unique(part.begin(), part.end()), part.end());
    if (part.size() < 2)
        throw RotorError("invalid point set", "partition spans no interval");

    auto index_of = [&part](const Rat& x) -> int {
        auto it = std::lower_bound(part.begin(), part.end(), x);
        if (it == part.end() || !(*it == x)) return -1;
        return static_cast<int>(it - part.begin());
    };
    if (rule == CoverRule::invariant) {
        for (const Rat& p : part)
            if (index_of(f.eval(p)) < 0)
                throw RotorError("invalid point set",
                                 "point set is not invariant under the map");
    }

    int n = static_cast<int>(part.size()) - 1;
    // Cells whose closure meets [y1, y2]; the cell list is an interval of
    // indices since cells tile the partition range.
    auto overlap_range = [&part, n](const Rat& y1, const Rat& y2) -> std::pair<int, int> {
        int i1 = static_cast<int>(std::lower_bound(part.begin(), part.end(), y1) -
                                  part.begin());
        int first = std::max(0, i1 - 1);
        int i2 = static_cast<int>(std::upper_bound(part.begin(), part.end(), y2) -
                                  part.begin()) -
                 1;
        int last = std::min(n - 1, i2);
        return {first, last};
    };

    MarkovGraph g;
    for (int i = 0; i < n; ++i) {
        const Rat& lo = part[static_cast<size_t>(i)];
        const Rat& hi = part[static_cast<size_t>(i) + 1];
        const Piece& piece = f.piece_containing(lo);
        if (hi > piece.hi)
            throw RotorError("invalid point set",
                             "partition must refine the map's linearity intervals");
        MarkovVertex v{lo, hi, 0};
        std::pair<int, int> range{1, 0};
        bool flat = piece.slope == Rat(0);
        if (!flat || rule == CoverRule::outer) {
            Rat mid = (lo + hi) / Rat(2);
            int s = (f.eval(mid) - mid).sign();
            if (s == 0)
                throw RotorError("internal error",
                                 "interior fixed point escaped the refinement");
            Rat y1 = piece.eval(lo), y2 = piece.eval(hi);
            if (y2 < y1) std::swap(y1, y2);
            if (rule == CoverRule::invariant) {
                v.sign = s;
                int i1 = index_of(y1), i2 = index_of(y2);
                if (i1 < 0 || i2 < 0)
                    throw RotorError("internal error",
                                     "image endpoint missed the partition");
                range = {i1, i2 - 1};
            } else {
                v.sign = s;
                range = overlap_range(y1, y2);
            }
        }
        g.verts.push_back(v);
        g.cover.push_back(range);
    }
    return g;
}

namespace {

constexpr int32_t INF = std::numeric_limits<int32_t>::max() / 4;

// Tarjan strongly connected components, iterative, over the range adjacency.
std::vector<int> scc_ids(const MarkovGraph& g, int& count) {
    int n = static_cast<int>(g.size());
    std::vector<int> idx(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0),
        comp(static_cast<size_t>(n), -1);
    std::vector<char> on(static_cast<size_t>(n), 0);
    std::vector<int> stk;
    int next_idx = 0;
    count = 0;
    struct Frame {
        int v;
        int child;
    };
    for (int root = 0; root < n; ++root) {
        if (idx[static_cast<size_t>(root)] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        while (!call.empty()) {
            Frame& fr = call.back();
            int v = fr.v;
            if (fr.child == 0) {
                idx[static_cast<size_t>(v)] = low[static_cast<size_t>(v)] = next_idx++;
                stk.push_back(v);
                on[static_cast<size_t>(v)] = 1;
            }
            auto [c1, c2] = g.cover[static_cast<size_t>(v)];
            int deg = c2 - c1 + 1;
            bool descended = false;
            while (fr.child < deg) {
                int w = c1 + fr.child;
                ++fr.child;
                if (idx[static_cast<size_t>(w)] == -1) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on[static_cast<size_t>(w)])
                    low[static_cast<size_t>(v)] =
                        std::min(low[static_cast<size_t>(v)], idx[static_cast<size_t>(w)]);
            }
            if (descended) continue;
            if (low[static_cast<size_t>(v)] == idx[static_cast<size_t>(v)]) {
                while (true) {
                    int w = stk.back();
                    stk.pop_back();
                    on[static_cast<size_t>(w)] = 0;
                    comp[static_cast<size_t>(w)] = count;
                    if (w == v) break;
                }
                ++count;
            }
            call.pop_back();
            if (!call.empty()) {
                int parent = call.back().v;
                low[static_cast<size_t>(parent)] =
                    std::min(low[static_cast<size_t>(parent)], low[static_cast<size_t>(v)]);
            }
        }
    }
    return comp;
}

// Karp minimum mean cycle inside one strongly connected vertex set S (sorted
// by global index). Edges are the graph's cover ranges intersected with S;
// contiguity in global indices makes each local target set one range too.
std::pair<int64_t, int64_t> karp_min_mean(const MarkovGraph& g, const std::vector<int>& S) {
    int n = static_cast<int>(S.size());
    std::vector<int> lb(static_cast<size_t>(n)), ub(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) {
        auto [c1, c2] = g.cover[static_cast<size_t>(S[static_cast<size_t>(u)])];
        lb[static_cast<size_t>(u)] = static_cast<int>(
            std::lower_bound(S.begin(), S.end(), c1) - S.begin());
        ub[static_cast<size_t>(u)] = static_cast<int>(
            std::upper_bound(S.begin(), S.end(), c2) - S.begin());
    }
    std::vector<std::vector<int32_t>> d(
        static_cast<size_t>(n) + 1,
        std::vector<int32_t>(static_cast<size_t>(n), INF));
    d[0][0] = 0;

    std::vector<std::vector<int32_t>> add_plus(static_cast<size_t>(n) + 1),
        add_other(static_cast<size_t>(n) + 1);
    for (int k = 1; k <= n; ++k) {
        for (auto& v : add_plus) v.clear();
        for (auto& v : add_other) v.clear();
        // Sweep targets left to right keeping multisets of source values whose
        // ranges cover the current target, split by source sign.
        std::multiset<int32_t> plus, other;
        std::vector<std::vector<int32_t>> rm_plus(static_cast<size_t>(n) + 1),
            rm_other(static_cast<size_t>(n) + 1);
        for (int u = 0; u < n; ++u) {
            int32_t val = d[static_cast<size_t>(k) - 1][static_cast<size_t>(u)];
            if (val >= INF || lb[static_cast<size_t>(u)] >= ub[static_cast<size_t>(u)])
                continue;
            bool is_plus = g.verts[static_cast<size_t>(S[static_cast<size_t>(u)])].sign > 0;
            auto& adds = is_plus ? add_plus : add_other;
            auto& rms = is_plus ? rm_plus : rm_other;
            adds[static_cast<size_t>(lb[static_cast<size_t>(u)])].push_back(val);
            rms[static_cast<size_t>(ub[static_cast<size_t>(u)])].push_back(val);
        }
        for (int v = 0; v < n; ++v) {
            for (int32_t x : add_plus[static_cast<size_t>(v)]) plus.insert(x);
            for (int32_t x : add_other[static_cast<size_t>(v)]) other.insert(x);
            for (int32_t x : rm_plus[static_cast<size_t>(v)]) plus.erase(plus.find(x));
            for (int32_t x : rm_other[static_cast<size_t>(v)]) other.erase(other.find(x));
            int32_t best = INF;
            if (!other.empty()) best = std::min(best, *other.begin());
            if (!plus.empty()) {
                int w = g.verts[static_cast<size_t>(S[static_cast<size_t>(v)])].sign < 0 ? 1 : 0;
                best = std::min(best, *plus.begin() + w);
            }
            d[static_cast<size_t>(k)][static_cast<size_t>(v)] = best;
        }
    }

    // mu* = min over v of max over k of (d[n][v]-d[k][v])/(n-k).
    int64_t bn = -1, bd = 1; // best min so far, invalid marker bn < 0 impossible as weights >= 0
    bool have = false;
    for (int v = 0; v < n; ++v) {
        if (d[static_cast<size_t>(n)][static_cast<size_t>(v)] >= INF) continue;
        int64_t mn = -1, md = 1;
        bool have_max = false;
        for (int k = 0; k < n; ++k) {
            if (d[static_cast<size_t>(k)][static_cast<size_t>(v)] >= INF) continue;
            int64_t num = d[static_cast<size_t>(n)][static_cast<size_t>(v)] -
                          d[static_cast<size_t>(k)][static_cast<size_t>(v)];
            int64_t den = n - k;
            if (!have_max || num * md > mn * den) {
                mn = num;
                md = den;
                have_max = true;
            }
        }
        if (!have_max) continue;
        if (!have || mn * bd < bn * md) {
            bn = mn;
            bd = md;
            have = true;
        }
    }
    if (!have)
        throw RotorError("internal error", "no closed walk found in a strongly connected component");
    return {bn, bd};
}

} // namespace

std::optional<Rat> min_mean_mixed_cycle(const MarkovGraph& g) {
    int n = static_cast<int>(g.size());
    if (n == 0) return std::nullopt;
    int ncomp = 0;
    std::vector<int> comp = scc_ids(g, ncomp);
    std::vector<std::vector<int>> members(static_cast<size_t>(ncomp));
    for (int v = 0; v < n; ++v) members[static_cast<size_t>(comp[static_cast<size_t>(v)])].push_back(v);

    std::optional<Rat> best;
    for (auto& S : members) {
        if (S.size() < 2) continue;
        std::sort(S.begin(), S.end());
        bool has_plus = false, has_minus = false;
        for (int v : S) {
            if (g.verts[static_cast<size_t>(v)].sign > 0) has_plus = true;
            if (g.verts[static_cast<size_t>(v)].sign < 0) has_minus = true;
        }
        if (!has_plus || !has_minus) continue;
        auto [num, den] = karp_min_mean(g, S);
        Rat mu{Int(num), Int(den)};
        if (!best || mu < *best) best = mu;
    }
    return best;
}

} // namespace rotor
