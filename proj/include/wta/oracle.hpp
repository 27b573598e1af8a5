#pragma once

#include "wta/automaton.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace wta {

/// All trees of T_Sigma with height <= max_height, each exactly once, in
/// (height, enumeration) order.  Throws ResourceError past `budget` trees.
/// An alphabet without nullary symbols yields the empty list.
std::vector<TreePtr> enumerate_trees(const RankedAlphabet& sigma, int max_height,
                                     std::size_t budget = 1'000'000);

/// All contexts of height <= max_height whose side slots are filled from
/// `side_leaves` (trees or state leaves), each exactly once, in (height,
/// enumeration) order.  The bare hole is always included.
std::vector<TreePtr> enumerate_contexts(const RankedAlphabet& sigma, int max_height,
                                        const std::vector<TreePtr>& side_leaves,
                                        std::size_t budget = 1'000'000);

struct Mismatch {
    TreePtr tree;
    Weight weight_a{};
    Weight weight_b{};
};

/// Exhaustive comparison result: `mismatches` are exactly the trees of
/// height <= height where the two automata disagree; `clean` iff none of
/// them has height in [height - tail, height].
struct MismatchReport {
    std::vector<Mismatch> mismatches;
    int height = 0;
    int tail = 0;
    bool clean = true;
};

/// Compares recognized weights over all trees up to the given height.
/// Internally aggregates trees by (state under A, state under B, weight
/// ratio), so enumeration stays exact even when the tree count explodes;
/// only the disagreeing trees are materialized.  A clean verdict is
/// evidence of almost-equivalence, not proof.
MismatchReport compare_languages(const Wdta& a, const Wdta& b, int height, int tail,
                                 std::size_t budget = 1'000'000);

/// Returns s iff sem_q1(c) = s (x) sem_q2(c) for every extended context,
/// checked over all compositions of at most |Q| shallow transition
/// contexts (distinguishing contexts need hole depth <= |Q|).  s is fixed
/// by the first context where both sides are nonzero.  Requires a trimmed
/// automaton.
std::optional<Weight> states_equivalent_oracle(const Wdta& a, int q1, int q2);

/// Pair-graph decision for almost-equivalence on a minimal automaton:
/// TRUE iff no non-diagonal pair reachable from (q1, q2) lies on a cycle
/// of non-diagonal pairs.  Throws DomainError when the automaton is not
/// minimal.
bool states_almost_equivalent_oracle(const Wdta& a, int q1, int q2);

/// TRUE iff some tree with height in [|Q|, 2|Q|] reaches q (pumping puts a
/// witness into that band iff infinitely many trees reach q).
bool kernel_oracle(const Wdta& a, int q);

/// TRUE iff some chain of shallow transition contexts with length in
/// [|Q|, 2|Q|) maps q into a final state.
bool cokernel_oracle(const Wdta& a, int q);

struct HyperMinimalityVerdict {
    bool ok = false;
    std::optional<std::pair<int, int>> witness;  // violating state pair
};

/// TRUE iff minimization preserves the state count and every distinct
/// almost-equivalent pair consists of two kernel states.
HyperMinimalityVerdict hyper_minimality_check(const Wdta& a);

struct RandomBounds {
    int max_states = 4;
    int max_symbols = 3;
    int max_rank = 2;
};

/// Reproducible random total automaton: fully stored table, no designated
/// sink, trimmed after construction.  Boolean kind fixes all weights to
/// one.
Wdta random_wdta(std::uint64_t seed, const RandomBounds& bounds, Kind kind);

/// Unary chain q1 -> ... -> qn with a self-loop at qn, uniform edge
/// weight 2 and a de-Bruijn-derived finality pattern: almost every state
/// pair is distinguishable within hole depth O(log n), yet the signature
/// refinement cascades through n - 1 merges.  Rational kind; n >= 2.
Wdta chain_wdta(int n);

} // namespace wta
