#pragma once

#include "wta/automaton.hpp"

#include <vector>

namespace wta {

/// Partition of Q into scaled-equivalence classes with per-state factors:
/// sem_q = lambda(q) (x) sem_rep on every context, lambda(rep) = 1.
/// Dead states (sem identically zero) form one class with lambda = 1.
struct EquivalenceResult {
    std::vector<int> block_of;               ///< state -> block id
    std::vector<int> representative;         ///< block id -> least state index
    std::vector<Weight> lambda;              ///< per-state factor
    std::vector<bool> dead;                  ///< per-state: sem_q == 0
};

/// Computes the scaled equivalence of a trimmed, total automaton.
///
/// Strategy: dead states collapse first; every live state gets a pushing
/// weight along a shortest accepting context (final states anchor at the
/// bare hole with weight one), after which scaled equivalence is plain
/// equality of normalized rows and Moore refinement applies.
EquivalenceResult compute_equivalence(const Wdta& a);

/// Classical lossless minimization: one state per equivalence class of
/// trim(a), merged with weighted merges.  The result recognizes exactly
/// the same weighted tree language.
Wdta minimize(const Wdta& a);

} // namespace wta
