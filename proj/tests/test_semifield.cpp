#include "wta/semifield.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace wta;

namespace {

Weight fin(long num, long den = 1) { return Weight{false, Rational(num, den)}; }

Weight random_nonzero(const Semifield& sf, std::mt19937_64& rng) {
    auto draw = [&](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    switch (sf.kind()) {
    case Kind::Boolean: return sf.one();
    case Kind::Rational: {
        int num = draw(1, 40) * (draw(0, 1) ? 1 : -1);
        return fin(num, draw(1, 40));
    }
    case Kind::Tropical: return fin(draw(-50, 50), draw(1, 8));
    case Kind::MaxTimes: return fin(draw(1, 64), 64);
    }
    return sf.one();
}

} // namespace

TEST_CASE("multiplication per kind") {
    Semifield rat(Kind::Rational);
    CHECK(rat.mul(fin(2, 3), fin(3, 4)) == fin(1, 2));
    Semifield trop(Kind::Tropical);
    CHECK(trop.mul(fin(2), fin(1)) == fin(3));
    for (Kind k : {Kind::Boolean, Kind::Rational, Kind::Tropical, Kind::MaxTimes}) {
        Semifield sf(k);
        Weight a = k == Kind::MaxTimes ? fin(3, 4) : fin(3);
        if (k == Kind::Boolean) a = sf.one();
        CHECK(sf.mul(a, sf.one()) == a);
        CHECK(sf.mul(a, sf.zero()) == sf.zero());
        CHECK_FALSE(sf.zero() == sf.one());
    }
}

TEST_CASE("inverses") {
    Semifield rat(Kind::Rational);
    CHECK(rat.inv(fin(2)) == fin(1, 2));
    Semifield trop(Kind::Tropical);
    CHECK(trop.inv(fin(5)) == fin(-5));
    Semifield boolean(Kind::Boolean);
    CHECK(boolean.inv(boolean.one()) == boolean.one());
    for (Kind k : {Kind::Boolean, Kind::Rational, Kind::Tropical, Kind::MaxTimes}) {
        Semifield sf(k);
        CHECK_THROWS_AS((void)sf.inv(sf.zero()), DomainError);
    }
}

TEST_CASE("canonical encoding") {
    Semifield rat(Kind::Rational);
    CHECK(rat.encode(fin(4, 8)) == rat.encode(fin(1, 2)));
    Semifield trop(Kind::Tropical);
    CHECK(trop.encode(trop.zero()) == trop.encode(trop.parse("inf")));
    Semifield boolean(Kind::Boolean);
    CHECK(boolean.print(boolean.one()) == "1");

    // injectivity on a sample of distinct reduced rationals
    std::mt19937_64 rng(11);
    std::set<Rational> values;
    std::set<std::string> encodings;
    while (values.size() < 1000) {
        Weight w = random_nonzero(rat, rng);
        if (values.insert(w.value).second) encodings.insert(rat.encode(w));
    }
    CHECK(encodings.size() == 1000);
}

TEST_CASE("parsing per kind") {
    Semifield rat(Kind::Rational);
    CHECK(rat.parse("2/3") == fin(2, 3));
    CHECK(rat.parse("-7") == fin(-7));
    Semifield trop(Kind::Tropical);
    CHECK(trop.parse("1.5") == fin(3, 2));
    CHECK(trop.parse("inf") == trop.zero());
    Semifield mt(Kind::MaxTimes);
    CHECK(mt.parse("3/4") == fin(3, 4));
    CHECK_THROWS(mt.parse("5/4"));
    Semifield boolean(Kind::Boolean);
    CHECK(boolean.parse("1") == boolean.one());
    CHECK(boolean.parse("0") == boolean.zero());
}

TEST_CASE("group and semiring laws on random samples") {
    std::mt19937_64 rng(7);
    for (Kind k : {Kind::Boolean, Kind::Rational, Kind::Tropical, Kind::MaxTimes}) {
        Semifield sf(k);
        for (int i = 0; i < 1000; ++i) {
            Weight a = random_nonzero(sf, rng);
            Weight b = random_nonzero(sf, rng);
            Weight c = random_nonzero(sf, rng);
            REQUIRE(sf.valid(a));
            REQUIRE(sf.mul(a, sf.inv(a)) == sf.one());
            REQUIRE(sf.mul(a, b) == sf.mul(b, a));
            REQUIRE(sf.mul(sf.mul(a, b), c) == sf.mul(a, sf.mul(b, c)));
            REQUIRE(sf.add(a, b) == sf.add(b, a));
            REQUIRE(sf.add(sf.add(a, b), c) == sf.add(a, sf.add(b, c)));
            REQUIRE(sf.add(a, sf.zero()) == a);
            REQUIRE(sf.mul(a, sf.add(b, c)) == sf.add(sf.mul(a, b), sf.mul(a, c)));
        }
    }
}
