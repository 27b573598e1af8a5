#include "wta/topology.hpp"
#include "wta/io.hpp"
#include "wta/oracle.hpp"

#include <doctest.h>

#include "fixtures.hpp"

using namespace wta;

TEST_CASE("fixture kernel and co-kernel") {
    auto a = fixtures::quad();
    auto cls = classify_states(a);
    int p = *a.state_index("p"), q = *a.state_index("q");
    int r = *a.state_index("r"), bot = *a.state_index("bot");

    // r and bot loop; p and q see only finitely many trees
    CHECK_FALSE(cls.kernel[p]);
    CHECK_FALSE(cls.kernel[q]);
    CHECK(cls.kernel[r]);
    CHECK(cls.kernel[bot]);

    // every state but the sink has arbitrarily tall accepting contexts
    CHECK(cls.cokernel[p]);
    CHECK(cls.cokernel[q]);
    CHECK(cls.cokernel[r]);
    CHECK_FALSE(cls.cokernel[bot]);

    CHECK(kernel_states(a) == cls.kernel);
    CHECK(cokernel_states(a) == cls.cokernel);
}

TEST_CASE("nullary-only automaton has empty kernel and co-kernel") {
    auto a = parse_automaton("semifield rational\nsig a 0\nsig b 0\n"
                             "state p q\nfinal p\n"
                             "trans a -> p @ 1\ntrans b -> q @ 3\n");
    auto cls = classify_states(a);
    CHECK(cls.kernel == std::vector<bool>{false, false});
    CHECK(cls.cokernel == std::vector<bool>{false, false});
}

TEST_CASE("acyclic chain has empty kernel") {
    auto a = parse_automaton("semifield rational\nsig a 0\nsig g 1\n"
                             "state p q bot\nfinal q\nsink bot\n"
                             "trans a -> p @ 1\ntrans g(p) -> q @ 2\n");
    auto cls = classify_states(a);
    int p = *a.state_index("p"), q = *a.state_index("q"), bot = *a.state_index("bot");
    CHECK_FALSE(cls.kernel[p]);
    CHECK_FALSE(cls.kernel[q]);
    CHECK(cls.kernel[bot]);  // the sink loops via g(bot) -> bot defaults
    CHECK(cls.cokernel[p] == false);  // only the finite context g([]) accepts
    CHECK(cls.cokernel[q] == false);
    CHECK_FALSE(cls.cokernel[bot]);
}

TEST_CASE("final self-loop puts everything in both classes") {
    auto a = parse_automaton("semifield boolean\nsig a 0\nsig g 1\n"
                             "state p\nfinal p\n"
                             "trans a -> p @ 1\ntrans g(p) -> p @ 1\n");
    auto cls = classify_states(a);
    CHECK(cls.kernel == std::vector<bool>{true});
    CHECK(cls.cokernel == std::vector<bool>{true});
}

TEST_CASE("no final states means an empty co-kernel") {
    auto a = parse_automaton("semifield rational\nsig a 0\nsig g 1\n"
                             "state p\nfinal\n"
                             "trans a -> p @ 1\ntrans g(p) -> p @ 1\n");
    auto cls = classify_states(a);
    CHECK(cls.kernel == std::vector<bool>{true});
    CHECK(cls.cokernel == std::vector<bool>{false});
}

TEST_CASE("classification matches the enumeration oracles on random automata") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto a = random_wdta(seed, RandomBounds{}, Kind::Rational);
        auto cls = classify_states(a);
        for (int q = 0; q < a.n(); ++q) {
            REQUIRE(cls.kernel[q] == kernel_oracle(a, q));
            REQUIRE(cls.cokernel[q] == cokernel_oracle(a, q));
        }
    }
}
