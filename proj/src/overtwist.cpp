#include "rotor/overtwist.hpp"

#include <numeric>

#include "rotor/error.hpp"

namespace rotor {

void OvertwistSpec::validate() const {
    if (p < 1 || q < 3 || 2 * p >= q || std::gcd(p, q) != 1 ||
        r < 0 || r > q - 2 * p)
        throw RotorError("invalid over-twist specification",
                         "need coprime p/q < 1/2 and 0 <= r <= q-2p");
}

CyclicPattern overtwist_permutation(const OvertwistSpec& spec) {
    spec.validate();
    CyclicPattern pat;
    pat.q = static_cast<int>(spec.q);
    pat.image.assign(static_cast<size_t>(spec.q), 0);
    for (long long j = 1; j <= spec.q; ++j) {
        long long img;
        switch (color_of(spec, j)) {
            case Color::red:   img = j + spec.p; break;
            case Color::green: img = spec.q - j + spec.r + 1; break;
            case Color::pink:  img = 2 * spec.p - j + spec.r + 1; break;
            default:           img = j - spec.p; break;
        }
        pat.image[static_cast<size_t>(j) - 1] = static_cast<int>(img);
    }
    pat.validate(); // the four blocks always splice into one q-cycle
    return pat;
}

Color color_of(const OvertwistSpec& spec, long long j) {
    spec.validate();
    if (j < 1 || j > spec.q)
        throw RotorError("index out of range", "point index must lie in 1..q");
    if (j <= spec.r) return Color::red;
    if (j <= spec.r + spec.p) return Color::green;
    if (j <= spec.r + 2 * spec.p) return Color::pink;
    return Color::blue;
}

Modality modality_of(const OvertwistSpec& spec) {
    spec.validate();
    return (spec.r == 0 || spec.r == spec.q - 2 * spec.p) ? Modality::unimodal
                                                          : Modality::bimodal;
}

std::optional<long long> overtwist_index_of(const CyclicPattern& pattern) {
    pattern.validate();
    if (pattern.q < 3) return std::nullopt;
    OverRotationPair pr = over_rotation_pair(pattern);
    if (std::gcd(pr.p, pr.q) != 1 || 2 * pr.p >= pr.q) return std::nullopt;
    for (long long r = 0; r <= pr.q - 2 * pr.p; ++r) {
        OvertwistSpec spec{pr.p, pr.q, r};
        if (overtwist_permutation(spec) == pattern) return r;
    }
    return std::nullopt;
}

} // namespace rotor
