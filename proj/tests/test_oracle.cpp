#include "wta/oracle.hpp"
#include "wta/hyperminimize.hpp"
#include "wta/io.hpp"
#include "wta/minimize.hpp"

#include <doctest.h>

#include "fixtures.hpp"

#include <set>

using namespace wta;

TEST_CASE("tree enumeration") {
    auto a = fixtures::quad();
    auto h0 = enumerate_trees(a.alphabet, 0);
    CHECK(h0.size() == 2);  // a and b
    auto h1 = enumerate_trees(a.alphabet, 1);
    CHECK(h1.size() == 6);  // + g/h applied to a/b
    auto h2 = enumerate_trees(a.alphabet, 2);
    CHECK(h2.size() == 14);
    // each exactly once
    std::set<std::string> seen;
    for (const auto& t : h2) {
        CHECK(t->height <= 2);
        CHECK(seen.insert(a.print_tree(t)).second);
    }
    CHECK_THROWS_AS((void)enumerate_trees(a.alphabet, 2, 5), ResourceError);
    RankedAlphabet no_nullary;
    no_nullary.add("g", 1);
    CHECK(enumerate_trees(no_nullary, 3).empty());
}

TEST_CASE("context enumeration") {
    auto a = fixtures::quad();
    auto cs = enumerate_contexts(a.alphabet, 1, {a.parse_tree("a")});
    // [], g([]), h([]) for a unary-only growth above the hole
    CHECK(cs.size() == 3);
    for (const auto& c : cs) CHECK(is_context(c));
    auto deep = enumerate_contexts(a.alphabet, 3, {a.parse_tree("a")});
    std::set<std::string> seen;
    for (const auto& c : deep) CHECK(seen.insert(a.print_tree(c)).second);
    CHECK(deep.size() == 15);  // unary spines: 1 + 2 + 4 + 8 choices over {g,h}
}

TEST_CASE("language comparison finds the exact disagreements") {
    auto a = fixtures::quad();
    auto hm = hyper_minimize(a).automaton;

    auto rep = compare_languages(a, hm, 6, 3);
    REQUIRE(rep.mismatches.size() == 1);
    CHECK(a.print_tree(rep.mismatches[0].tree) == "b");
    CHECK(rep.clean);

    // reflexivity
    CHECK(compare_languages(a, a, 6, 3).mismatches.empty());

    // a genuinely different automaton is flagged as dirty
    auto other = a;
    other.table[TransKey{*a.alphabet.find("g"), {*a.state_index("r")}}].weight =
        a.semifield().parse("3");
    auto bad = compare_languages(a, other, 6, 3);
    CHECK_FALSE(bad.mismatches.empty());
    CHECK_FALSE(bad.clean);

    // alphabets must agree
    auto shifted = a;
    shifted.alphabet = RankedAlphabet{};
    shifted.alphabet.add("x", 0);
    CHECK_THROWS_AS((void)compare_languages(a, shifted, 3, 1), DomainError);
}

TEST_CASE("equivalence oracle") {
    auto a = fixtures::quad();
    int p = *a.state_index("p"), q = *a.state_index("q");
    int r = *a.state_index("r"), bot = *a.state_index("bot");

    CHECK_FALSE(states_equivalent_oracle(a, p, q).has_value());  // differ at []
    CHECK_FALSE(states_equivalent_oracle(a, p, r).has_value());
    CHECK(states_equivalent_oracle(a, r, r) == a.semifield().one());
    CHECK_FALSE(states_equivalent_oracle(a, r, bot).has_value());

    // a scaled clone is recovered with its factor
    auto b = parse_automaton("semifield rational\nsig a 0\nsig b 0\nsig g 1\n"
                             "state p q r\nfinal r\n"
                             "trans a -> p @ 1\ntrans b -> q @ 1\n"
                             "trans g(p) -> r @ 1\ntrans g(q) -> r @ 3\n"
                             "trans g(r) -> r @ 1\n");
    auto s = states_equivalent_oracle(b, *b.state_index("q"), *b.state_index("p"));
    REQUIRE(s.has_value());
    CHECK(b.semifield().print(*s) == "3");
}

TEST_CASE("almost-equivalence oracle") {
    auto a = fixtures::quad();
    int p = *a.state_index("p"), q = *a.state_index("q");
    int r = *a.state_index("r"), bot = *a.state_index("bot");

    CHECK(states_almost_equivalent_oracle(a, p, q));
    CHECK(states_almost_equivalent_oracle(a, q, p));
    CHECK(states_almost_equivalent_oracle(a, p, p));
    CHECK_FALSE(states_almost_equivalent_oracle(a, p, r));  // differ on every g-chain
    CHECK_FALSE(states_almost_equivalent_oracle(a, r, bot));
    CHECK_FALSE(states_almost_equivalent_oracle(a, q, r));

    // the oracle refuses automata that are not minimal
    auto padded = a;
    padded.alphabet.add("c", 0);
    int twin = padded.add_state("p2", true);
    padded.table[TransKey{*padded.alphabet.find("c"), {}}] =
        TransData{twin, padded.semifield().one()};
    padded.table[TransKey{*padded.alphabet.find("g"), {twin}}] =
        TransData{*padded.state_index("r"), padded.semifield().parse("2")};
    CHECK_THROWS_AS((void)states_almost_equivalent_oracle(padded, 0, 1), DomainError);
}

TEST_CASE("kernel and co-kernel oracles on the fixture") {
    auto a = fixtures::quad();
    CHECK_FALSE(kernel_oracle(a, *a.state_index("p")));
    CHECK_FALSE(kernel_oracle(a, *a.state_index("q")));
    CHECK(kernel_oracle(a, *a.state_index("r")));
    CHECK(kernel_oracle(a, *a.state_index("bot")));
    CHECK(cokernel_oracle(a, *a.state_index("p")));
    CHECK(cokernel_oracle(a, *a.state_index("q")));
    CHECK(cokernel_oracle(a, *a.state_index("r")));
    CHECK_FALSE(cokernel_oracle(a, *a.state_index("bot")));
}

TEST_CASE("hyper-minimality check") {
    auto a = fixtures::quad();
    auto before = hyper_minimality_check(a);
    CHECK_FALSE(before.ok);
    CHECK(before.witness.has_value());
    auto after = hyper_minimality_check(hyper_minimize(a).automaton);
    CHECK(after.ok);
    CHECK_FALSE(after.witness.has_value());

    // non-minimal automata fail without a witness pair
    auto padded = parse_automaton(fixtures::kQuad);
    padded.alphabet.add("c", 0);
    int twin = padded.add_state("p2", true);
    padded.table[TransKey{*padded.alphabet.find("c"), {}}] =
        TransData{twin, padded.semifield().one()};
    padded.table[TransKey{*padded.alphabet.find("g"), {twin}}] =
        TransData{*padded.state_index("r"), padded.semifield().parse("2")};
    auto nm = hyper_minimality_check(padded);
    CHECK_FALSE(nm.ok);
    CHECK_FALSE(nm.witness.has_value());
}

TEST_CASE("generators are deterministic and well formed") {
    for (Kind kind : {Kind::Boolean, Kind::Rational, Kind::Tropical, Kind::MaxTimes}) {
        auto a = random_wdta(42, RandomBounds{}, kind);
        auto b = random_wdta(42, RandomBounds{}, kind);
        CHECK(structurally_equal(a, b));
        CHECK(a.validate().empty());
        CHECK(a.is_trimmed());
        CHECK(a.kind == kind);
    }
    CHECK_FALSE(structurally_equal(random_wdta(1, RandomBounds{}, Kind::Rational),
                                   random_wdta(2, RandomBounds{}, Kind::Rational)));

    auto chain = chain_wdta(16);
    CHECK(chain.n() == 16);
    CHECK(chain.validate().empty());
    CHECK(chain.is_trimmed());
    auto collapsed = hyper_minimize(chain);
    CHECK(collapsed.automaton.n() == 1);
    CHECK(collapsed.report.max_rep_changes <= 4);
}
