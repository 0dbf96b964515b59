#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rotor/error.hpp"
#include "rotor/rational.hpp"

using rotor::Int;
using rotor::Rat;
using rotor::RotorError;

TEST_CASE("construction normalizes sign and gcd") {
    CHECK(Rat(Int(6), Int(4)) == Rat(Int(3), Int(2)));
    CHECK(Rat(Int(-6), Int(4)) == Rat(Int(3), Int(-2)));
    CHECK(Rat(Int(0), Int(-7)) == Rat(0));
    CHECK(Rat(Int(-5), Int(-10)).num() == 1);
    CHECK(Rat(Int(-5), Int(-10)).den() == 2);
    CHECK(Rat(Int(4), Int(2)).is_integer());
    CHECK_THROWS_AS(Rat(Int(1), Int(0)), RotorError);
}

TEST_CASE("arithmetic stays exact") {
    Rat a(Int(1), Int(3)), b(Int(1), Int(6));
    CHECK(a + b == Rat(Int(1), Int(2)));
    CHECK(a - b == b);
    CHECK(a * b == Rat(Int(1), Int(18)));
    CHECK(a / b == Rat(2));
    CHECK(-a == Rat(Int(-1), Int(3)));
    CHECK_THROWS_AS(a / Rat(0), RotorError);

    Rat s(0);
    for (int i = 0; i < 100; ++i) s += Rat(Int(1), Int(100));
    CHECK(s == Rat(1));

    // Denominators that would overflow any machine word.
    Rat big(Int(1), Int(1));
    for (int i = 0; i < 50; ++i) big = big / Rat(3);
    Rat back = big;
    for (int i = 0; i < 50; ++i) back = back * Rat(3);
    CHECK(back == Rat(1));
}

TEST_CASE("ordering is the cross-multiplied total order") {
    CHECK(Rat(Int(1), Int(3)) < Rat(Int(2), Int(5)));
    CHECK(Rat(Int(-1), Int(2)) < Rat(0));
    CHECK(Rat(Int(7), Int(2)) > Rat(3));
    CHECK(Rat(Int(1), Int(2)) <= Rat(Int(2), Int(4)));
    CHECK(Rat(Int(1), Int(2)) >= Rat(Int(2), Int(4)));
}

TEST_CASE("floor rounds toward minus infinity") {
    CHECK(Rat(Int(7), Int(2)).floor() == 3);
    CHECK(Rat(Int(-7), Int(2)).floor() == -4);
    CHECK(Rat(Int(-6), Int(2)).floor() == -3);
    CHECK(Rat(0).floor() == 0);
}

TEST_CASE("string round trip") {
    CHECK(Rat(Int(3), Int(13)).str() == "3/13");
    CHECK(Rat(0).str() == "0/1");
    CHECK(Rat(Int(-3), Int(2)).str() == "-3/2");
    CHECK(Rat::parse("22/7") == Rat(Int(22), Int(7)));
    CHECK(Rat::parse("-4") == Rat(-4));
    CHECK(Rat::parse(Rat(Int(5), Int(8)).str()) == Rat(Int(5), Int(8)));
    CHECK_THROWS_AS(Rat::parse("1/0"), RotorError);
    CHECK_THROWS_AS(Rat::parse("abc"), RotorError);
    CHECK_THROWS_AS(Rat::parse("1/2/3"), RotorError);
    CHECK_THROWS_AS(Rat::parse(""), RotorError);
}

TEST_CASE("approx is close") {
    CHECK(Rat(Int(1), Int(3)).approx() == doctest::Approx(1.0 / 3.0));
}
