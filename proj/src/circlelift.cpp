#include "rotor/circlelift.hpp"

#include <algorithm>

#include "json.hpp"
#include "rotor/error.hpp"

namespace rotor {

void Lift::validate() const {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw RotorError("invalid lift", "need matching breakpoint and value lists");
    if (!(xs.front() == Rat(0)) || !(xs.back() == Rat(1)))
        throw RotorError("invalid lift", "breakpoints must span [0,1]");
    for (size_t i = 0; i + 1 < xs.size(); ++i)
        if (!(xs[i] < xs[i + 1]))
            throw RotorError("invalid lift", "breakpoints must increase strictly");
    if (!(ys.back() == ys.front() + Rat(1)))
        throw RotorError("invalid lift", "degree one requires F(1) = F(0) + 1");
}

Rat Lift::eval(const Rat& x) const {
    Rat shift(0);
    Rat base = x;
    if (base < Rat(0) || base > Rat(1)) {
        Int n = base.floor();
        shift = Rat(n);
        base = base - shift;
    }
    // Binary search the segment containing base.
    size_t lo = 0, hi = xs.size() - 2;
    while (lo < hi) {
        size_t mid = (lo + hi + 1) / 2;
        if (xs[mid] <= base)
            lo = mid;
        else
            hi = mid - 1;
    }
    const Rat &x1 = xs[lo], &x2 = xs[lo + 1], &y1 = ys[lo], &y2 = ys[lo + 1];
    return y1 + (y2 - y1) * (base - x1) / (x2 - x1) + shift;
}

bool Lift::monotone() const {
    for (size_t i = 0; i + 1 < ys.size(); ++i)
        if (ys[i + 1] < ys[i]) return false;
    return true;
}

std::string Lift::to_json() const {
    nlohmann::json j;
    for (size_t i = 0; i < xs.size(); ++i) {
        j["x"].push_back(xs[i].str());
        j["y"].push_back(ys[i].str());
    }
    return j.dump();
}

Lift Lift::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw RotorError("parse error", e.what());
    }
    Lift f;
    try {
        for (const auto& s : j.at("x")) f.xs.push_back(Rat::parse(s.get<std::string>()));
        for (const auto& s : j.at("y")) f.ys.push_back(Rat::parse(s.get<std::string>()));
    } catch (const nlohmann::json::exception& e) {
        throw RotorError("parse error", e.what());
    }
    f.validate();
    return f;
}

namespace {

struct Seg {
    Rat x1, y1, x2, y2;
};

Lift segments_to_lift(std::vector<Seg> segs) {
    Lift out;
    for (size_t i = 0; i < segs.size(); ++i) {
        if (i == 0) {
            out.xs.push_back(segs[i].x1);
            out.ys.push_back(segs[i].y1);
        }
        if (segs[i].x2 > out.xs.back()) {
            out.xs.push_back(segs[i].x2);
            out.ys.push_back(segs[i].y2);
        }
    }
    // Drop interior breakpoints that are collinear with both neighbours.
    Lift tidy;
    size_t n = out.xs.size();
    for (size_t i = 0; i < n; ++i) {
        if (i > 0 && i + 1 < n) {
            const Rat &ax = tidy.xs.back(), &ay = tidy.ys.back();
            Rat s1 = (out.ys[i] - ay) * (out.xs[i + 1] - out.xs[i]);
            Rat s2 = (out.ys[i + 1] - out.ys[i]) * (out.xs[i] - ax);
            if (s1 == s2) continue;
        }
        tidy.xs.push_back(out.xs[i]);
        tidy.ys.push_back(out.ys[i]);
    }
    tidy.validate();
    return tidy;
}

} // namespace

Lift lower_monotone_map(const Lift& f) {
    f.validate();
    size_t n = f.xs.size();
    // Running minimum of f over [x, 1], built right to left.
    std::vector<Seg> segs;
    Rat level = f.ys.back();
    for (size_t i = n - 1; i-- > 0;) {
        const Rat &x1 = f.xs[i], &y1 = f.ys[i], &x2 = f.xs[i + 1], &y2 = f.ys[i + 1];
        if (y2 <= y1) {
            // Decreasing or flat piece: the minimum to the right is constant.
            Rat c = rat_min(y2, level);
            segs.push_back({x1, c, x2, c});
            level = rat_min(c, y1);
        } else if (y2 <= level) {
            segs.push_back({x1, y1, x2, y2});
            level = y1;
        } else if (y1 >= level) {
            segs.push_back({x1, level, x2, level});
        } else {
            Rat xc = x1 + (level - y1) * (x2 - x1) / (y2 - y1);
            segs.push_back({xc, level, x2, level});
            segs.push_back({x1, y1, xc, level});
            level = y1;
        }
    }
    std::reverse(segs.begin(), segs.end());

    // Clip from above at m(0) + 1; the running min is nondecreasing, so the
    // clip point is unique.
    Rat cap = segs.front().y1 + Rat(1);
    std::vector<Seg> clipped;
    for (const Seg& s : segs) {
        if (s.y2 <= cap) {
            clipped.push_back(s);
        } else if (s.y1 >= cap) {
            clipped.push_back({s.x1, cap, s.x2, cap});
        } else {
            Rat xc = s.x1 + (cap - s.y1) * (s.x2 - s.x1) / (s.y2 - s.y1);
            clipped.push_back({s.x1, s.y1, xc, cap});
            clipped.push_back({xc, cap, s.x2, cap});
        }
    }
    return segments_to_lift(std::move(clipped));
}

Lift upper_monotone_map(const Lift& f) {
    f.validate();
    size_t n = f.xs.size();
    // Running maximum of f over [0, x], built left to right.
    std::vector<Seg> segs;
    Rat level = f.ys.front();
    for (size_t i = 0; i + 1 < n; ++i) {
        const Rat &x1 = f.xs[i], &y1 = f.ys[i], &x2 = f.xs[i + 1], &y2 = f.ys[i + 1];
        if (y2 >= y1) {
            if (y1 >= level) {
                segs.push_back({x1, y1, x2, y2});
                level = y2;
            } else if (y2 <= level) {
                segs.push_back({x1, level, x2, level});
            } else {
                Rat xc = x1 + (level - y1) * (x2 - x1) / (y2 - y1);
                segs.push_back({x1, level, xc, level});
                segs.push_back({xc, level, x2, y2});
                level = y2;
            }
        } else {
            Rat c = rat_max(y1, level);
            segs.push_back({x1, c, x2, c});
            level = c;
        }
    }

    // Clip from below at M(1) - 1.
    Rat floor_level = segs.back().y2 - Rat(1);
    std::vector<Seg> clipped;
    for (const Seg& s : segs) {
        if (s.y1 >= floor_level) {
            clipped.push_back(s);
        } else if (s.y2 <= floor_level) {
            clipped.push_back({s.x1, floor_level, s.x2, floor_level});
        } else {
            Rat xc = s.x1 + (floor_level - s.y1) * (s.x2 - s.x1) / (s.y2 - s.y1);
            clipped.push_back({s.x1, floor_level, xc, floor_level});
            clipped.push_back({xc, floor_level, s.x2, s.y2});
        }
    }
    return segments_to_lift(std::move(clipped));
}

namespace {

// G after H, restricted back to one fundamental domain.
Lift compose(const Lift& g, const Lift& h) {
    std::vector<Rat> cuts = h.xs;
    // Preimages under h of every g-breakpoint lifted into h's range.
    Rat ylo = h.ys.front(), yhi = h.ys.back();
    for (size_t bi = 0; bi + 1 < g.xs.size(); ++bi) {
        const Rat& b = g.xs[bi];
        // b + n in [ylo, yhi]
        Int n1 = (ylo - b).floor();
        for (Int n = n1; Rat(n) + b <= yhi; ++n) {
            Rat t = Rat(n) + b;
            if (t < ylo) continue;
            for (size_t i = 0; i + 1 < h.xs.size(); ++i) {
                const Rat &y1 = h.ys[i], &y2 = h.ys[i + 1];
                if (y1 == y2) continue;
                if (rat_min(y1, y2) <= t && t <= rat_max(y1, y2)) {
                    Rat x = h.xs[i] + (t - y1) * (h.xs[i + 1] - h.xs[i]) / (y2 - y1);
                    cuts.push_back(x);
                }
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    Lift out;
    for (const Rat& x : cuts) {
        out.xs.push_back(x);
        out.ys.push_back(g.eval(h.eval(x)));
    }
    out.validate();
    return out;
}

} // namespace

RotResult rotation_number(const Lift& g, long long precision) {
    g.validate();
    if (!g.monotone())
        throw RotorError("not monotone", "rotation numbers need a monotone lift");
    if (precision < 1)
        throw RotorError("domain error", "precision must be positive");

    // Exact phase: a rational rotation number p/k shows up as an integer in
    // the displacement range of the k-th composite.
    constexpr int kExactCap = 64;
    constexpr size_t kPieceGuard = 20000;
    Lift gk = g;
    for (int k = 1; k <= kExactCap; ++k) {
        Rat dmin = gk.ys[0] - gk.xs[0], dmax = dmin;
        for (size_t i = 1; i < gk.xs.size(); ++i) {
            Rat d = gk.ys[i] - gk.xs[i];
            dmin = rat_min(dmin, d);
            dmax = rat_max(dmax, d);
        }
        Int p = dmax.floor();
        if (Rat(p) >= dmin) {
            RotResult r;
            r.exact = true;
            r.value = Rat(p, Int(k));
            r.lo = r.hi = r.value;
            return r;
        }
        if (k == kExactCap || gk.xs.size() > kPieceGuard) break;
        gk = compose(g, gk);
    }

    // Enclosure phase: directed-rounding orbits of 0 on a dyadic grid. The
    // lower orbit rounds down, the upper rounds up, so they bracket the true
    // orbit of 0; |G^n(0) - n*rho| <= 1 turns them into bounds on rho.
    Int q(1);
    q <<= 61;
    Rat qr(q);
    long long n = 2 * precision + 2;
    Int lo(0), hi(0);
    for (long long i = 0; i < n; ++i) {
        Rat ylo = g.eval(Rat(lo, q)) * qr;
        Rat yhi = g.eval(Rat(hi, q)) * qr;
        lo = ylo.floor();
        Int h2 = yhi.floor();
        if (!(Rat(h2) == yhi)) ++h2; // ceil
        hi = h2;
    }
    RotResult r;
    r.exact = false;
    Rat nn{Int(n)};
    r.lo = Rat(lo, q) / nn - Rat(Int(1), Int(n));
    r.hi = Rat(hi, q) / nn + Rat(Int(1), Int(n));
    r.value = (r.lo + r.hi) / Rat(2);
    return r;
}

RotInterval rotation_interval(const Lift& f, long long precision) {
    f.validate();
    return {rotation_number(lower_monotone_map(f), precision),
            rotation_number(upper_monotone_map(f), precision)};
}

} // namespace rotor
