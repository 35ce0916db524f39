#include "doctest.h"

#include "rtreconf/types.hpp"

using namespace rtreconf;

TEST_CASE("ceil_div rounds up") {
    CHECK(ceil_div(0, 3) == 0);
    CHECK(ceil_div(1, 3) == 1);
    CHECK(ceil_div(3, 3) == 1);
    CHECK(ceil_div(4, 3) == 2);
    CHECK(ceil_div(100, 1) == 100);
    CHECK(ceil_div(7, 7) == 1);
}

TEST_CASE("percent parses plain decimals exactly") {
    auto p = Percent::parse("20");
    REQUIRE(p);
    CHECK(*p == Percent{20, 1});

    p = Percent::parse("7.5");
    REQUIRE(p);
    CHECK(*p == Percent{15, 2}); // reduced

    p = Percent::parse("0.25");
    REQUIRE(p);
    CHECK(*p == Percent{1, 4});

    p = Percent::parse("0");
    REQUIRE(p);
    CHECK(*p == Percent{0, 1});

    p = Percent::parse("12.345");
    REQUIRE(p);
    CHECK(p->num * 1000 == 12345 * p->den);
}

TEST_CASE("percent rejects junk") {
    CHECK(!Percent::parse(""));
    CHECK(!Percent::parse("-5"));
    CHECK(!Percent::parse("5%"));
    CHECK(!Percent::parse("1.2.3"));
    CHECK(!Percent::parse("abc"));
    CHECK(!Percent::parse("."));
    CHECK(!Percent::parse("5."));
    CHECK(!Percent::parse(" 5"));
}

TEST_CASE("percent comparison is exact") {
    Percent a{1, 3}; // 0.333...%
    Percent b{3333333333, 10000000000};
    CHECK(b.less_equal(a));
    CHECK(!a.less_equal(b));
    CHECK(a.less_equal(a));
    CHECK(Percent{10, 1}.less_equal(Percent{10, 1}));
    CHECK(Percent{15, 2}.less_equal(Percent{8, 1}));
    CHECK(!Percent{8, 1}.less_equal(Percent{15, 2}));
}

TEST_CASE("percent to_string") {
    CHECK(Percent{20, 1}.to_string() == "20%");
    CHECK(Percent{15, 2}.to_string() == "15/2%");
}

TEST_CASE("result carries value or error") {
    Result<int> good(7);
    REQUIRE(good.ok());
    CHECK(good.value() == 7);

    auto bad = fail<int>(Errc::unknown_id, "no such thing");
    REQUIRE(!bad.ok());
    CHECK(bad.error().code == Errc::unknown_id);
    CHECK(bad.error().message == "no such thing");

    Result<void> fine;
    CHECK(fine.ok());
    Result<void> broken = Error{Errc::io_error, "gone"};
    CHECK(!broken.ok());
    CHECK(broken.error().code == Errc::io_error);
}
