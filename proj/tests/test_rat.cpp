#include <doctest.h>

#include "mmgeo/rat.hpp"

using mmgeo::Rat;

TEST_CASE("construction normalizes sign and gcd") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-2, 4) == Rat(1, -2));
    CHECK(Rat(3, -6).num() == -1);
    CHECK(Rat(3, -6).den() == 2);
    CHECK(Rat(0, 7) == Rat(0));
    CHECK_THROWS(Rat(1, 0));
}

TEST_CASE("arithmetic is exact") {
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(1, 2) - Rat(1, 3) == Rat(1, 6));
    CHECK(Rat(2, 3) * Rat(3, 4) == Rat(1, 2));
    CHECK(Rat(1, 2) / Rat(1, 4) == Rat(2));
    CHECK_THROWS(Rat(1) / Rat(0));
    // no drift over many accumulations
    Rat sum(0);
    for (int i = 0; i < 1000; ++i) sum = sum + Rat(1, 1000);
    CHECK(sum == Rat(1));
}

TEST_CASE("comparisons match cross multiplication") {
    CHECK(Rat(1, 3) < Rat(1, 2));
    CHECK(Rat(-1, 2) < Rat(-1, 3));
    CHECK(Rat(7, 3) > Rat(2));
    CHECK(Rat(1, 3) <= Rat(2, 6));
    CHECK(Rat(1, 3) >= Rat(2, 6));
}

TEST_CASE("floor") {
    CHECK(Rat(7, 2).floor() == 3);
    CHECK(Rat(-7, 2).floor() == -4);
    CHECK(Rat(4).floor() == 4);
    CHECK(Rat(-4).floor() == -4);
    CHECK(Rat(0).floor() == 0);
}

TEST_CASE("string round trip") {
    CHECK(Rat::parse("3") == Rat(3));
    CHECK(Rat::parse("-1.25") == Rat(-5, 4));
    CHECK(Rat::parse("0.5") == Rat(1, 2));
    CHECK(Rat::parse("2/7") == Rat(2, 7));
    CHECK(Rat::parse("-3/9") == Rat(-1, 3));
    CHECK(Rat(1, 2).to_string() == "0.5");
    CHECK(Rat(-5, 4).to_string() == "-1.25");
    CHECK(Rat(1, 3).to_string() == "1/3");
    CHECK(Rat(6).to_string() == "6");
    CHECK(Rat(1, 10).to_string() == "0.1");
    CHECK(Rat::parse(Rat(1, 6561).to_string()) == Rat(1, 6561));
    CHECK_THROWS(Rat::parse(""));
    CHECK_THROWS(Rat::parse("abc"));
    CHECK_THROWS(Rat::parse("1.2.3"));
}

TEST_CASE("ipow with overflow guard") {
    CHECK(Rat::ipow(3, 0) == 1);
    CHECK(Rat::ipow(3, 8) == 6561);
    CHECK(Rat::ipow(2, 62) == (std::int64_t{1} << 62));
    CHECK_THROWS(Rat::ipow(10, 30));
}
