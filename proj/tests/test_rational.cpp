#include "doctest.h"

#include "iso/rational.hpp"

using namespace iso;

TEST_CASE("rat canonicalizes") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat(-2, 4) == rat(-1, 2));
    CHECK(rat(6, 3) == Rat(2));
    CHECK_THROWS_AS(rat(1, 0), std::invalid_argument);
}

TEST_CASE("parse and format round-trip") {
    CHECK(format_rational(*parse_rational("7/3")) == "7/3");
    CHECK(format_rational(*parse_rational("4/2")) == "2");
    CHECK(format_rational(*parse_rational("-5/10")) == "-1/2");
    CHECK(format_rational(*parse_rational("12")) == "12");
    CHECK(!parse_rational("1/0"));
    CHECK(!parse_rational("a"));
    CHECK(!parse_rational(""));
    CHECK(!parse_rational("1.5"));
}

TEST_CASE("rational gcd") {
    CHECK(rational_gcd(rat(1, 2), rat(1, 3)) == rat(1, 6));
    CHECK(rational_gcd(Rat(4), Rat(6)) == Rat(2));
    CHECK(rational_gcd(Rat(0), rat(3, 4)) == rat(3, 4));
    // every argument is an integer multiple of the gcd
    Rat g = rational_gcd(rat(3, 4), rat(5, 6));
    CHECK(Rat(rat(3, 4) / g).get_den() == 1);
    CHECK(Rat(rat(5, 6) / g).get_den() == 1);
}

TEST_CASE("ceil to multiple and floor") {
    CHECK(ceil_to_multiple(rat(7, 3), rat(1, 2)) == rat(5, 2));
    CHECK(ceil_to_multiple(Rat(2), rat(1, 2)) == Rat(2));
    CHECK(rational_floor(rat(7, 3)) == Rat(2));
    CHECK(rational_floor(rat(-7, 3)) == Rat(-3));
    CHECK(rational_floor(Rat(5)) == Rat(5));
}
