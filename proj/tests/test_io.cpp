#include "wta/io.hpp"
#include "wta/oracle.hpp"

#include <doctest.h>

#include "fixtures.hpp"

#include <string>

using namespace wta;

TEST_CASE("parse the fixture") {
    auto a = fixtures::quad();
    CHECK(a.kind == Kind::Rational);
    CHECK(a.n() == 4);
    CHECK(a.logical_m() == 10);
    CHECK(a.table.size() == 10);
    CHECK(a.sink == a.state_index("bot"));
    CHECK(a.is_final(*a.state_index("p")));
    CHECK_FALSE(a.is_final(*a.state_index("q")));
    CHECK(a.validate().empty());
}

TEST_CASE("serialize then parse is the identity") {
    auto a = fixtures::quad();
    auto text = serialize_automaton(a);
    auto b = parse_automaton(text);
    CHECK(structurally_equal(a, b));
    // canonical form is a fixed point
    CHECK(serialize_automaton(b) == text);
}

TEST_CASE("default sink entries are omitted from the canonical form") {
    auto a = fixtures::quad();
    a.table.erase(TransKey{*a.alphabet.find("h"), {*a.state_index("p")}});
    auto text = serialize_automaton(a);
    CHECK(text.find("h(p)") == std::string::npos);
    auto b = parse_automaton(text);
    CHECK(b.validate().empty());
    CHECK(b.lookup(TransKey{*b.alphabet.find("h"), {*b.state_index("p")}}).target ==
          *b.state_index("bot"));
}

TEST_CASE("parse errors carry line numbers") {
    auto expect_error = [](const std::string& text, const std::string& needle) {
        try {
            (void)parse_automaton(text);
            FAIL_CHECK("expected ParseError for: " << needle);
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error("sig a 0\nstate p\nfinal p\ntrans a -> p @ 1\n", "semifield");
    expect_error("semifield rational\nsig a 0\nstate p\nfinal p\n"
                 "trans a -> p @ 0\n",
                 "line 5");  // zero weight
    expect_error("semifield rational\nsig a 0\nsig g 1\nstate p\nfinal p\n"
                 "trans a -> p @ 1\n",
                 "g");  // not total and no sink to default to
    expect_error("semifield rational\nsig a 0\nstate p\nfinal p\n"
                 "trans a -> p @ 1\ntrans a -> p @ 2\n",
                 "line 6");  // duplicate left-hand side
    expect_error("semifield rational\nsig a 0\nstate p\nfinal p\n"
                 "trans a -> z @ 1\n",
                 "line 5");  // unknown state
    expect_error("semifield boolean\nsig a 0\nstate p\nfinal p\n"
                 "trans a -> p @ 1/2\n",
                 "line 5");  // weight outside the carrier
}

TEST_CASE("comments and blank lines are ignored") {
    auto a = parse_automaton("# header\nsemifield boolean\n\nsig a 0\n"
                             "state p  # trailing comment\n"
                             "final p\ntrans a -> p @ 1\n");
    CHECK(a.n() == 1);
    CHECK(a.validate().empty());
}

TEST_CASE("random automata survive a round trip") {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        Kind kind = static_cast<Kind>(seed % 4);
        auto a = random_wdta(seed, RandomBounds{}, kind);
        auto b = parse_automaton(serialize_automaton(a));
        REQUIRE(structurally_equal(a, b));
        REQUIRE(b.validate().empty());
    }
}
