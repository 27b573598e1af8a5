#include "wta/minimize.hpp"
#include "wta/io.hpp"
#include "wta/oracle.hpp"

#include <doctest.h>

#include "fixtures.hpp"

using namespace wta;

namespace {

// Fixture plus a final clone of p, reached via the fresh nullary c.
const char* kCloneP = R"(
semifield rational
sig a 0
sig b 0
sig c 0
sig g 1
sig h 1
state p q r bot p2
final p r p2
sink bot
trans a -> p @ 1
trans b -> q @ 1
trans c -> p2 @ 1
trans g(p) -> r @ 2
trans g(q) -> r @ 1
trans g(r) -> r @ 1
trans h(r) -> r @ 1
trans g(p2) -> r @ 2
)";

// Fixture plus a non-final clone of q whose live row carries twice the
// weight, so it is equivalent to q with factor 2.
const char* kCloneQ = R"(
semifield rational
sig a 0
sig b 0
sig c 0
sig g 1
sig h 1
state p q r bot q2
final p r
sink bot
trans a -> p @ 1
trans b -> q @ 1
trans c -> q2 @ 1
trans g(p) -> r @ 2
trans g(q) -> r @ 1
trans g(r) -> r @ 1
trans h(r) -> r @ 1
trans g(q2) -> r @ 2
)";

} // namespace

TEST_CASE("the fixture is already minimal") {
    auto a = fixtures::quad();
    auto eq = compute_equivalence(a);
    // all four states pairwise inequivalent: four blocks
    CHECK(eq.representative.size() == 4);
    CHECK(eq.dead == std::vector<bool>{false, false, false, true});
    for (int q = 0; q < 4; ++q) CHECK(eq.lambda[q] == a.semifield().one());
    auto m = minimize(a);
    CHECK(m.n() == 4);
    CHECK(structurally_equal(m, a.trim()));
}

TEST_CASE("a final clone collapses with factor one") {
    auto a = parse_automaton(kCloneP);
    auto eq = compute_equivalence(a);
    int p = *a.state_index("p"), p2 = *a.state_index("p2");
    CHECK(eq.block_of[p] == eq.block_of[p2]);
    CHECK(eq.lambda[p2] == a.semifield().one());  // two final states never scale

    auto m = minimize(a);
    CHECK(m.n() == 4);
    auto rep = compare_languages(a, m, 5, 5);
    CHECK(rep.mismatches.empty());
}

TEST_CASE("a scaled non-final clone collapses with its factor") {
    auto a = parse_automaton(kCloneQ);
    auto eq = compute_equivalence(a);
    int q = *a.state_index("q"), q2 = *a.state_index("q2");
    REQUIRE(eq.block_of[q] == eq.block_of[q2]);
    CHECK(eq.representative[eq.block_of[q]] == q);
    CHECK(a.semifield().print(eq.lambda[q2]) == "2");
    CHECK(eq.lambda[q] == a.semifield().one());

    auto m = minimize(a);
    CHECK(m.n() == 4);
    // the redirected entry picks up the factor: c -> q @ 2
    auto c = m.lookup(TransKey{*m.alphabet.find("c"), {}});
    CHECK(c.target == *m.state_index("q"));
    CHECK(m.semifield().print(c.weight) == "2");
    CHECK(compare_languages(a, m, 5, 5).mismatches.empty());
}

TEST_CASE("dead states fold into one class") {
    auto a = parse_automaton(kCloneQ);
    auto dead_twin = a;
    dead_twin.alphabet.add("d", 0);
    int extra = dead_twin.add_state("junk", false);
    dead_twin.table[TransKey{*dead_twin.alphabet.find("d"), {}}] =
        TransData{extra, dead_twin.semifield().one()};
    auto eq = compute_equivalence(dead_twin);
    CHECK(eq.dead[extra]);
    CHECK(eq.block_of[extra] == eq.block_of[*dead_twin.state_index("bot")]);
    auto m = minimize(dead_twin);
    CHECK(m.n() == 4);
}

TEST_CASE("boolean minimization merges by language only") {
    auto a = parse_automaton("semifield boolean\nsig a 0\nsig b 0\nsig g 1\n"
                             "state p q bot\nfinal p q\nsink bot\n"
                             "trans a -> p @ 1\ntrans b -> q @ 1\n"
                             "trans g(p) -> p @ 1\ntrans g(q) -> q @ 1\n");
    auto m = minimize(a);
    CHECK(m.n() == 1);  // p and q merge; the unreachable sink is trimmed away
    CHECK(compare_languages(a, m, 5, 5).mismatches.empty());
}

TEST_CASE("minimize is idempotent and lossless on random automata") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        Kind kind = static_cast<Kind>(seed % 4);
        auto a = random_wdta(seed, RandomBounds{}, kind);
        auto m = minimize(a);
        REQUIRE(m.validate().empty());
        REQUIRE(compare_languages(a, m, 5, 5).mismatches.empty());
        REQUIRE(minimize(m).n() == m.n());
        // no equivalent pair survives
        for (int x = 0; x < m.n(); ++x)
            for (int y = x + 1; y < m.n(); ++y)
                REQUIRE_FALSE(states_equivalent_oracle(m, x, y).has_value());
    }
}
