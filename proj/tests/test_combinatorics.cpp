#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "oracles.hpp"
#include "rotor/error.hpp"
#include "rotor/pattern.hpp"

using namespace rotor;

TEST_CASE("pattern validation") {
    CHECK_NOTHROW((CyclicPattern{3, {3, 1, 2}}.validate()));
    CHECK_THROWS_AS((CyclicPattern{3, {1, 2, 3}}.validate()), RotorError); // three fixed points
    CHECK_THROWS_AS((CyclicPattern{4, {2, 1, 4, 3}}.validate()), RotorError); // two 2-cycles
    CHECK_THROWS_AS((CyclicPattern{3, {3, 3, 2}}.validate()), RotorError);
    CHECK_THROWS_AS((CyclicPattern{2, {1, 2, 1}}.validate()), RotorError);
    CHECK_NOTHROW((CyclicPattern{1, {1}}.validate()));
}

TEST_CASE("over-rotation pair on pinned patterns") {
    // 2-cycle: both points switch sign every step.
    CHECK(over_rotation_pair({2, {2, 1}}) == OverRotationPair{1, 2});
    CHECK(over_rotation_number({2, {2, 1}}) == Rat(Int(1), Int(2)));

    // The two 3-cycles.
    CHECK(over_rotation_pair({3, {3, 1, 2}}) == OverRotationPair{1, 3});
    CHECK(over_rotation_pair({3, {2, 3, 1}}) == OverRotationPair{1, 3});

    // A 6-cycle with unreduced pair (2,6): 1->5->3->2->6->4->1.
    CHECK(over_rotation_pair({6, {5, 6, 2, 1, 3, 4}}) == OverRotationPair{2, 6});
    CHECK(over_rotation_number({6, {5, 6, 2, 1, 3, 4}}) == Rat(Int(1), Int(3)));

    CHECK_THROWS_AS(over_rotation_pair({1, {1}}), RotorError);
}

TEST_CASE("pair structure over all patterns up to q = 8") {
    for (int q = 2; q <= 8; ++q) {
        long long seen_bad = 0;
        for (const auto& pat : oracles::all_cyclic_patterns(q)) {
            OverRotationPair pr = over_rotation_pair(pat);
            if (pr.q != q) ++seen_bad;
            if (!(pr.p >= 1 && 2 * pr.p <= q)) ++seen_bad;
            // Orientation flip preserves the pair.
            if (!(over_rotation_pair(pat.reversed()) == pr)) ++seen_bad;
            // Reversal is an involution.
            if (!(pat.reversed().reversed() == pat)) ++seen_bad;
        }
        CHECK(seen_bad == 0);
    }
}

TEST_CASE("json round trip") {
    CyclicPattern pat{6, {5, 6, 2, 1, 3, 4}};
    CHECK(CyclicPattern::from_json(pat.to_json()) == pat);
    CHECK_THROWS_AS(CyclicPattern::from_json("{"), RotorError);
    CHECK_THROWS_AS(CyclicPattern::from_json("{\"q\": 2}"), RotorError);
    CHECK_THROWS_AS(CyclicPattern::from_json("{\"q\": 3, \"image\": [1, 2, 3]}"),
                    RotorError);
}

TEST_CASE("sharkovsky order pinned comparisons") {
    CHECK(sharkovsky_ge(3, 5));
    CHECK_FALSE(sharkovsky_ge(5, 3));
    CHECK(sharkovsky_ge(3, 2));
    CHECK(sharkovsky_ge(6, 4));
    CHECK(sharkovsky_ge(7, 6));
    CHECK(sharkovsky_ge(2, 1));
    CHECK_FALSE(sharkovsky_ge(1, 2));
    CHECK(sharkovsky_ge(4, 4));
    CHECK(sharkovsky_ge(12, 20)); // 4*3 before 4*5
    CHECK(sharkovsky_ge(10, 4));  // doubled odds before powers of two
    CHECK_THROWS_AS(sharkovsky_ge(0, 3), RotorError);
}

TEST_CASE("sharkovsky order matches the explicit ranked list up to 200") {
    auto rank = oracles::sharkovsky_ranks(200);
    for (int m = 1; m <= 200; ++m)
        for (int n = 1; n <= 200; ++n) {
            bool expect = rank[static_cast<size_t>(m)] <= rank[static_cast<size_t>(n)];
            if (sharkovsky_ge(m, n) != expect) {
                CAPTURE(m);
                CAPTURE(n);
                CHECK(sharkovsky_ge(m, n) == expect);
            }
        }
    CHECK(true);
}

static std::vector<OverRotationPair> pairs_up_to(long long qmax) {
    std::vector<OverRotationPair> out;
    for (long long q = 2; q <= qmax; ++q)
        for (long long p = 1; 2 * p <= q; ++p) out.push_back({p, q});
    return out;
}

TEST_CASE("forcing order pinned comparisons") {
    CHECK(orp_forces({2, 6}, {1, 3}));
    CHECK_FALSE(orp_forces({1, 3}, {2, 6}));
    CHECK(orp_forces({3, 9}, {1, 3}));
    CHECK_FALSE(orp_forces({1, 3}, {3, 9}));
    CHECK(orp_forces({1, 3}, {2, 5}));      // 1/3 < 2/5
    CHECK_FALSE(orp_forces({2, 5}, {1, 3}));
    CHECK(orp_forces({2, 6}, {2, 6}));      // reflexive
    // Equal value, multiplicities compared in the Sharkovsky order: the odd
    // multiplicity 3 forces the power of two 2, not the other way round.
    CHECK(orp_forces({3, 9}, {2, 6}));
    CHECK_FALSE(orp_forces({2, 6}, {3, 9}));
    CHECK_THROWS_AS(orp_forces({0, 3}, {1, 3}), RotorError);
    CHECK_THROWS_AS(orp_forces({2, 3}, {1, 3}), RotorError);
}

TEST_CASE("forcing is a partial order on pairs with q <= 12") {
    auto pairs = pairs_up_to(12);
    size_t n = pairs.size();
    std::vector<std::vector<char>> f(n, std::vector<char>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) f[i][j] = orp_forces(pairs[i], pairs[j]);

    long long bad_refl = 0, bad_antisym = 0, bad_trans = 0;
    for (size_t i = 0; i < n; ++i) {
        if (!f[i][i]) ++bad_refl;
        for (size_t j = 0; j < n; ++j) {
            if (i != j && f[i][j] && f[j][i] && !(pairs[i] == pairs[j])) ++bad_antisym;
            if (!f[i][j]) continue;
            for (size_t k = 0; k < n; ++k)
                if (f[j][k] && !f[i][k]) ++bad_trans;
        }
    }
    CHECK(bad_refl == 0);
    CHECK(bad_antisym == 0);
    CHECK(bad_trans == 0);
}

TEST_CASE("forcing respects the value order strictly across distinct values") {
    auto pairs = pairs_up_to(10);
    for (const auto& a : pairs)
        for (const auto& b : pairs) {
            if (a.value() < b.value()) {
                CHECK(orp_forces(a, b));
                CHECK_FALSE(orp_forces(b, a));
            }
        }
}
