#pragma once

#include "wta/automaton.hpp"

#include <string>
#include <vector>

namespace wta {

/// One signature entry: shallow context, its target, and the weight
/// normalized by the least co-kernel-target context of the state.
struct SignatureTriple {
    TransitionContext context;
    int target = 0;
    Weight weight{};

    bool operator==(const SignatureTriple& o) const = default;
};

/// Standardized signature: sorted by context; empty iff the state is
/// co-preamble; the triple of the least context carries weight one.
using Signature = std::vector<SignatureTriple>;

Signature standardized_signature(const Wdta& a, const std::vector<bool>& cokernel, int q);

/// Canonical byte encoding of a signature, used as hash key.
std::string encode_signature(const Semifield& sf, const Signature& sig);

/// Blocks of almost-equivalent states plus the scaling map f relating each
/// state's context semantics to its block survivor's (f(survivor) = 1).
struct AlmostEquivalence {
    std::vector<int> block_of;                 ///< state -> block id
    std::vector<std::vector<int>> blocks;      ///< block id -> member states
    std::vector<int> survivor;                 ///< block id -> surviving state
    std::vector<Weight> scaling;               ///< per-state factor f
    std::vector<int> rep_changes;              ///< per-state representative changes
    int merges = 0;
};

/// Signature-hashing almost-equivalence computation on a minimal automaton
/// (merges happen on a private working copy; `a` is untouched).
AlmostEquivalence compute_almost_equivalence(const Wdta& a, const std::vector<bool>& cokernel);

/// Merges every preamble non-representative of each block into the block
/// representative (a kernel member when one exists, otherwise the
/// Algorithm-2 survivor).  Kernel non-representatives are kept.
Wdta merge_states(const Wdta& a, const std::vector<bool>& kernel, const AlmostEquivalence& ae);

struct HyperminimizeReport {
    int n_input = 0;
    unsigned long long m_input = 0;
    int n_minimal = 0;
    int n_output = 0;
    unsigned long long m_output = 0;
    std::vector<std::vector<std::string>> blocks;       ///< states of the minimal automaton
    std::vector<std::pair<std::string, std::string>> scaling;  ///< state -> weight text
    std::vector<std::string> kernel;
    std::vector<std::string> cokernel;
    std::vector<int> rep_changes;
    int max_rep_changes = 0;

    std::string to_text() const;
};

struct HyperminimizeResult {
    Wdta automaton;
    HyperminimizeReport report;
};

/// Full pipeline: trim, minimize, kernel/co-kernel, almost-equivalence,
/// merge.  The result is hyper-minimal and differs from `a` on at most
/// finitely many trees, with no scaling factor.
HyperminimizeResult hyper_minimize(const Wdta& a);

} // namespace wta
