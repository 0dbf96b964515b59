#include "rotor/tracts.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <numeric>

#include "json.hpp"
#include "rotor/error.hpp"
#include "rotor/overtwist.hpp"

namespace rotor {

namespace {

// One axis-aligned piece of a staircase chain: y = c over x in [lo, hi]
// when horizontal, x = c over y in [lo, hi] otherwise.
struct ChainSeg {
    bool horizontal;
    Rat c, lo, hi;
};

std::vector<ChainSeg> chain_segments(const Staircase& z) {
    std::vector<ChainSeg> segs;
    size_t n = z.a.size();
    for (size_t r = 0; r < n; ++r) {
        Rat right = r == 0 ? Rat(1) : z.a[r - 1];
        segs.push_back({true, z.b[r], z.a[r], right});
        Rat bottom = r + 1 < n ? z.b[r + 1] : Rat(0);
        segs.push_back({false, z.a[r], bottom, z.b[r]});
    }
    return segs;
}

bool segs_meet(const ChainSeg& s, const ChainSeg& t) {
    if (s.horizontal == t.horizontal)
        return s.c == t.c && rat_max(s.lo, t.lo) <= rat_min(s.hi, t.hi);
    const ChainSeg& h = s.horizontal ? s : t;
    const ChainSeg& v = s.horizontal ? t : s;
    return h.lo <= v.c && v.c <= h.hi && v.lo <= h.c && h.c <= v.hi;
}

} // namespace

std::vector<std::pair<Rat, Rat>> Staircase::corners() const {
    std::vector<std::pair<Rat, Rat>> out;
    out.emplace_back(Rat(1), b.front());
    for (size_t r = 0; r < a.size(); ++r) {
        out.emplace_back(a[r], b[r]);
        out.emplace_back(a[r], r + 1 < b.size() ? b[r + 1] : Rat(0));
    }
    return out;
}

std::vector<Rat> Staircase::treads() const {
    std::vector<Rat> out{Rat(1) - a.front()};
    for (size_t r = 1; r < a.size(); ++r) out.push_back(a[r - 1] - a[r]);
    return out;
}

std::vector<Rat> Staircase::rises() const {
    std::vector<Rat> out;
    for (size_t r = 0; r + 1 < b.size(); ++r) out.push_back(b[r] - b[r + 1]);
    out.push_back(b.back());
    return out;
}

bool Staircase::contains(const Rat& x, const Rat& y) const {
    for (const ChainSeg& s : chain_segments(*this)) {
        const Rat& along = s.horizontal ? x : y;
        const Rat& across = s.horizontal ? y : x;
        if (across == s.c && s.lo <= along && along <= s.hi) return true;
    }
    return false;
}

bool Staircase::below(const Rat& x, const Rat& y) const {
    if (x <= a.back()) return false;
    for (size_t r = 0; r < a.size(); ++r)
        if (x > a[r]) return y < b[r];
    return false; // unreachable: x > a.back() matches the last index
}

Rat Staircase::dist2(const Rat& x, const Rat& y) const {
    Rat best(-1);
    for (const ChainSeg& s : chain_segments(*this)) {
        const Rat& along = s.horizontal ? x : y;
        const Rat& across = s.horizontal ? y : x;
        Rat da = along - rat_min(rat_max(along, s.lo), s.hi);
        Rat dc = across - s.c;
        Rat d2 = da * da + dc * dc;
        if (best < Rat(0) || d2 < best) best = d2;
    }
    return best;
}

std::pair<Rat, Rat> Staircase::nearest(const Rat& x, const Rat& y) const {
    Rat best(-1);
    std::pair<Rat, Rat> point;
    for (const ChainSeg& s : chain_segments(*this)) {
        const Rat& along = s.horizontal ? x : y;
        const Rat& across = s.horizontal ? y : x;
        Rat clamped = rat_min(rat_max(along, s.lo), s.hi);
        Rat da = along - clamped;
        Rat dc = across - s.c;
        Rat d2 = da * da + dc * dc;
        if (best < Rat(0) || d2 < best) {
            best = d2;
            point = s.horizontal ? std::pair<Rat, Rat>{clamped, s.c}
                                 : std::pair<Rat, Rat>{s.c, clamped};
        }
    }
    return point;
}

bool Staircase::disjoint(const Staircase& other) const {
    for (const ChainSeg& s : chain_segments(*this))
        for (const ChainSeg& t : chain_segments(other))
            if (segs_meet(s, t)) return false;
    return true;
}

std::string Staircase::to_json() const {
    nlohmann::json j;
    j["p"] = p;
    j["q"] = q;
    for (const Rat& x : a) j["a"].push_back(x.str());
    for (const Rat& y : b) j["b"].push_back(y.str());
    for (const auto& [cx, cy] : corners())
        j["corners"].push_back({cx.str(), cy.str()});
    return j.dump();
}

std::string Staircase::to_svg() const {
    // The rectangle [1/2,1] x [0,1/2] fills a 1000 x 1000 canvas with the
    // corner (1, 0) at the lower right.
    auto sx = [](const Rat& x) { return (x.approx() - 0.5) * 2000.0; };
    auto sy = [](const Rat& y) { return 1000.0 - y.approx() * 2000.0; };
    char buf[80];
    std::string pts;
    for (const auto& [cx, cy] : corners()) {
        std::snprintf(buf, sizeof buf, "%.3f,%.3f ", sx(cx), sy(cy));
        pts += buf;
    }
    if (!pts.empty()) pts.pop_back();
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" "
                      "viewBox=\"-20 -20 1040 1040\">\n";
    out += "  <rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" "
           "fill=\"none\" stroke=\"#888\"/>\n";
    out += "  <polyline points=\"" + pts +
           "\" fill=\"none\" stroke=\"#c33\" stroke-width=\"4\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "  <title>staircase of %lld/%lld</title>\n", p, q);
    out += buf;
    out += "</svg>\n";
    return out;
}

Staircase leading_set(long long p, long long q) {
    if (p < 1 || q < 1 || 2 * p >= q || std::gcd(p, q) != 1)
        throw RotorError("invalid parameters",
                         "need a coprime fraction 0 < p/q < 1/2");
    Staircase z;
    z.p = p;
    z.q = q;
    for (long long r = 0; r <= q - 2 * p; ++r) {
        auto [hi, lo] = extrema_images(overtwist_permutation({p, q, r}));
        if (!z.a.empty() && (hi >= z.a.back() || lo >= z.b.back()))
            throw RotorError("internal error",
                             "orbit extrema fail to decrease with the shift");
        z.a.push_back(hi);
        z.b.push_back(lo);
    }
    return z;
}

std::pair<Rat, Rat> retract(const Staircase& z, const Rat& x, const Rat& y,
                            const Rat& tol) {
    if (!(tol > Rat(0)))
        throw RotorError("domain error", "tolerance must be positive");
    if (z.below(x, y))
        throw RotorError("point below tract",
                         "the point is on the near side of the staircase");
    // Walk the segment toward (1, 0). Height falls while the chain height
    // rises, so the crossing is unique and bisection brackets it.
    Rat len2 = (Rat(1) - x) * (Rat(1) - x) + y * y;
    Rat tol2 = tol * tol;
    Rat lo(0), hi(1);
    while ((hi - lo) * (hi - lo) * len2 > tol2) {
        Rat mid = (lo + hi) / Rat(2);
        if (z.below(x + mid * (Rat(1) - x), y * (Rat(1) - mid)))
            hi = mid;
        else
            lo = mid;
    }
    return {x + lo * (Rat(1) - x), y * (Rat(1) - lo)};
}

std::pair<Rat, Rat> kappa_witness(const TruncationParams& par, long long p,
                                  long long q, const Rat& tol) {
    Staircase z = leading_set(p, q);
    par.validate();
    Rat target = Rat(Int(p), Int(q));
    PsiResult r = psi(par);
    if (!r.converged)
        throw RotorError("unconverged",
                         "the infimum estimate did not certify at this point");
    if (r.value < target)
        throw RotorError("point outside tract",
                         "the infimum here is " + r.value.str() +
                             ", short of " + target.str());
    if (r.value == target) return {par.alpha, par.beta};
    return retract(z, par.alpha, par.beta, tol);
}

AxisShift axis_shift(const TruncationParams& par, long long p, long long q) {
    Staircase z = leading_set(p, q);
    par.validate();
    PsiResult r = psi(par);
    if (!r.converged)
        throw RotorError("unconverged",
                         "the infimum estimate did not certify at this point");
    if (!(r.value == Rat(Int(p), Int(q))))
        throw RotorError("point outside tract",
                         "the infimum here is " + r.value.str() + ", not " +
                             Rat(Int(p), Int(q)).str());
    auto [nx, ny] = z.nearest(par.alpha, par.beta);
    AxisShift s;
    s.dx = par.alpha - nx;
    s.up = ny > par.beta;
    s.dy = s.up ? ny - par.beta : par.beta - ny;
    return s;
}

void SweepSpec::validate() const {
    if (alpha_steps < 2 || beta_steps < 2)
        throw RotorError("invalid parameters", "need at least 2 steps per axis");
    if (period_cap < 1)
        throw RotorError("invalid parameters", "period cap must be at least 1");
}

const SweepCell& SweepGrid::at(int i, int j) const {
    if (i < 0 || i >= spec.alpha_steps || j < 0 || j >= spec.beta_steps)
        throw RotorError("index out of range", "cell outside the grid");
    return cells[static_cast<size_t>(i) * spec.beta_steps + j];
}

std::string SweepGrid::to_csv() const {
    std::string out = "alpha_num,alpha_den,beta_num,beta_den,psi_num,psi_den,converged\n";
    for (const SweepCell& c : cells) {
        out += c.alpha.num().str() + "," + c.alpha.den().str() + ",";
        out += c.beta.num().str() + "," + c.beta.den().str() + ",";
        out += c.value.num().str() + "," + c.value.den().str() + ",";
        out += c.converged ? "1\n" : "0\n";
    }
    return out;
}

namespace {

SweepCell sweep_cell(const SweepSpec& spec, long long i, long long j) {
    Rat alpha = Rat(Int(1), Int(2)) +
                Rat(Int(i), Int(2 * (spec.alpha_steps - 1)));
    Rat beta = Rat(Int(j), Int(2 * (spec.beta_steps - 1)));
    PsiResult r = psi(TruncationParams{alpha, beta}, spec.period_cap);
    return {alpha, beta, r.value, r.converged};
}

} // namespace

SweepGrid sweep_serial(const SweepSpec& spec) {
    spec.validate();
    SweepGrid g{spec, {}};
    for (long long i = 0; i < spec.alpha_steps; ++i)
        for (long long j = 0; j < spec.beta_steps; ++j)
            g.cells.push_back(sweep_cell(spec, i, j));
    return g;
}

SweepGrid sweep_parallel(const SweepSpec& spec) {
    spec.validate();
    SweepGrid g{spec, {}};
    long long total = static_cast<long long>(spec.alpha_steps) * spec.beta_steps;
    g.cells.resize(static_cast<size_t>(total));
    std::atomic<bool> failed{false};
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 8)
    for (long long idx = 0; idx < total; ++idx) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            g.cells[static_cast<size_t>(idx)] =
                sweep_cell(spec, idx / spec.beta_steps, idx % spec.beta_steps);
        } catch (...) {
            bool first = false;
            if (failed.compare_exchange_strong(first, true))
                err = std::current_exception();
        }
    }
    if (failed.load()) std::rethrow_exception(err);
    return g;
}

bool level_set_connected(const SweepGrid& grid, const Rat& target, const Rat& tol) {
    grid.spec.validate();
    int na = grid.spec.alpha_steps, nb = grid.spec.beta_steps;
    std::vector<bool> in(grid.cells.size());
    for (size_t k = 0; k < grid.cells.size(); ++k) {
        Rat d = grid.cells[k].value - target;
        in[k] = d.abs() <= tol;
    }

    std::vector<int> parent(grid.cells.size());
    for (size_t k = 0; k < parent.size(); ++k) parent[k] = static_cast<int>(k);
    auto find = [&parent](int v) {
        while (parent[static_cast<size_t>(v)] != v) {
            parent[static_cast<size_t>(v)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
            v = parent[static_cast<size_t>(v)];
        }
        return v;
    };

    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) {
            int k = i * nb + j;
            if (!in[static_cast<size_t>(k)]) continue;
            for (int di = -1; di <= 1; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    int ni = i + di, nj = j + dj;
                    if (ni < 0 || ni >= na || nj < 0 || nj >= nb) continue;
                    int nk = ni * nb + nj;
                    if (in[static_cast<size_t>(nk)])
                        parent[static_cast<size_t>(find(k))] = find(nk);
                }
        }

    int roots = 0;
    for (size_t k = 0; k < in.size(); ++k)
        if (in[k] && find(static_cast<int>(k)) == static_cast<int>(k)) ++roots;
    if (roots == 0)
        throw RotorError("empty level set", "no grid value within " + tol.str() +
                                                " of " + target.str());
    return roots == 1;
}

} // namespace rotor
