#pragma once

#include "wta/automaton.hpp"

#include <string>
#include <string_view>

namespace wta {

/// Parses the line-oriented automaton format:
///
///   # comment
///   semifield KIND
///   sig NAME RANK
///   state NAME+
///   final NAME*
///   sink NAME
///   trans NAME ( "(" STATE ("," STATE)* ")" )? -> STATE @ WEIGHT
///
/// Missing entries default to (sink, 1).  Throws ParseError with a line
/// number on malformed input and on invariant violations.
Wdta parse_automaton(std::string_view text);

/// Canonical text: symbols, states, finals, sink, then transitions sorted
/// by (symbol, child tuple); default-sink entries omitted.
std::string serialize_automaton(const Wdta& a);

} // namespace wta
