#pragma once

#include "wta/automaton.hpp"

#include <vector>

namespace wta {

/// Kernel/preamble and co-kernel/co-preamble split of the state set.
struct StateClassification {
    std::vector<bool> kernel;    ///< reached by infinitely many trees
    std::vector<bool> cokernel;  ///< infinitely many accepting context chains
};

/// States reachable from a nontrivial SCC or a self-loop of the
/// child -> target graph.  Requires a trimmed automaton.
std::vector<bool> kernel_states(const Wdta& a);

/// States with infinitely many accepting transition-context chains:
/// a cycle state lies on some path into F.  Requires a trimmed automaton.
std::vector<bool> cokernel_states(const Wdta& a);

StateClassification classify_states(const Wdta& a);

} // namespace wta
