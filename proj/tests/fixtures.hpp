// Shared test fixtures.
#pragma once

#include "wta/io.hpp"

namespace fixtures {

// Four-state rational automaton with one almost-equivalent preamble pair:
// p and q agree on every context except the bare hole (weights 1 vs 0),
// r loops, bot is the absorbing sink.
inline const char* kQuad = R"(
semifield rational
sig a 0
sig b 0
sig g 1
sig h 1
state p q r bot
final p r
sink bot
trans a -> p @ 1
trans b -> q @ 1
trans g(p) -> r @ 2
trans g(q) -> r @ 1
trans g(r) -> r @ 1
trans g(bot) -> bot @ 1
trans h(p) -> bot @ 1
trans h(q) -> bot @ 1
trans h(r) -> r @ 1
trans h(bot) -> bot @ 1
)";

inline wta::Wdta quad() { return wta::parse_automaton(kQuad); }

} // namespace fixtures
