#include "rotor/pattern.hpp"

#include <numeric>

#include "json.hpp"
#include "rotor/error.hpp"

namespace rotor {

void CyclicPattern::validate() const {
    if (q < 1 || image.size() != static_cast<size_t>(q))
        throw RotorError("not a cycle", "pattern needs q >= 1 and exactly q image entries");
    std::vector<char> seen(static_cast<size_t>(q) + 1, 0);
    for (int v : image) {
        if (v < 1 || v > q || seen[static_cast<size_t>(v)])
            throw RotorError("not a cycle", "image is not a permutation of 1..q");
        seen[static_cast<size_t>(v)] = 1;
    }
    // A permutation is a single cycle iff the orbit of 1 has length q.
    int j = 1;
    for (int steps = 0; steps < q; ++steps) j = at(j);
    if (j != 1)
        throw RotorError("not a cycle", "permutation splits into several cycles");
    int len = 0;
    j = 1;
    do {
        j = at(j);
        ++len;
    } while (j != 1);
    if (len != q)
        throw RotorError("not a cycle", "permutation splits into several cycles");
}

CyclicPattern CyclicPattern::reversed() const {
    CyclicPattern out;
    out.q = q;
    out.image.assign(static_cast<size_t>(q), 0);
    for (int j = 1; j <= q; ++j)
        out.image[static_cast<size_t>(q - j)] = q + 1 - at(j);
    return out;
}

std::string CyclicPattern::to_json() const {
    nlohmann::json j;
    j["q"] = q;
    j["image"] = image;
    return j.dump();
}

CyclicPattern CyclicPattern::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw RotorError("parse error", e.what());
    }
    CyclicPattern p;
    try {
        p.q = j.at("q").get<int>();
        p.image = j.at("image").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& e) {
        throw RotorError("parse error", e.what());
    }
    p.validate();
    return p;
}

namespace {

int sgn(long long v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

} // namespace

OverRotationPair over_rotation_pair(const CyclicPattern& pattern) {
    pattern.validate();
    if (pattern.q == 1)
        throw RotorError("trivial cycle", "fixed points carry no over-rotation pair");
    long long m = 0;
    for (int j = 1; j <= pattern.q; ++j) {
        int d1 = sgn(pattern.at(j) - j);
        int d2 = sgn(pattern.at(pattern.at(j)) - pattern.at(j));
        if (d1 != d2) ++m;
    }
    if (m <= 0 || m % 2 != 0)
        throw RotorError("internal error", "sign switch count must be positive and even");
    return OverRotationPair{m / 2, pattern.q};
}

Rat over_rotation_number(const CyclicPattern& pattern) {
    OverRotationPair pr = over_rotation_pair(pattern);
    return pr.value();
}

bool sharkovsky_ge(long long m, long long n) {
    if (m < 1 || n < 1)
        throw RotorError("domain error", "Sharkovsky order is defined on positive integers");
    if (m == n) return true;
    long long a = 0, mo = m;
    while (mo % 2 == 0) { mo /= 2; ++a; }
    long long b = 0, no = n;
    while (no % 2 == 0) { no /= 2; ++b; }
    if (mo > 1 && no > 1) {
        if (a != b) return a < b;
        return mo < no;
    }
    if (mo > 1) return true;   // n is a power of two: everything precedes those
    if (no > 1) return false;  // m is a power of two but n is not
    return a > b;              // both powers of two: larger exponent first
}

bool orp_forces(const OverRotationPair& a, const OverRotationPair& b) {
    if (a.p < 1 || a.q < 2 || b.p < 1 || b.q < 2 ||
        2 * a.p > a.q || 2 * b.p > b.q)
        throw RotorError("domain error", "pairs must satisfy 0 < p/q <= 1/2");
    long long lhs = a.p * b.q;
    long long rhs = b.p * a.q;
    if (lhs != rhs) return lhs < rhs;
    // Equal values p/q = r/s = k/l in lowest terms; compare multiplicities.
    long long g = std::gcd(a.p, a.q);
    long long k = a.p / g;
    long long u = a.p / k;
    long long v = b.p / k;
    return sharkovsky_ge(u, v);
}

} // namespace rotor
