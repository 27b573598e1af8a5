#pragma once

#include "wta/semifield.hpp"
#include "wta/term.hpp"

#include <boost/functional/hash.hpp>

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wta {

/// Left-hand side of a transition: sigma(q1,...,qk).
struct TransKey {
    int symbol = 0;
    std::vector<int> children;

    bool operator==(const TransKey& o) const = default;
};

struct TransKeyHash {
    std::size_t operator()(const TransKey& k) const {
        std::size_t seed = boost::hash<int>()(k.symbol);
        boost::hash_range(seed, k.children.begin(), k.children.end());
        return seed;
    }
};

struct TransData {
    int target = 0;
    Weight weight{};

    bool operator==(const TransData& o) const = default;
};

/// Shallow transition context: sigma(q1,...,q_{i-1},[],q_{i+1},...,qk).
/// The total order on these is lexicographic by (symbol declaration index,
/// hole position, fixed states); it is fixed once per automaton.
struct TransitionContext {
    int symbol = 0;
    int hole = 0;  // 1-based slot of the hole
    std::vector<int> side;  // the rank-1 fixed states, in slot order

    TransKey plug(int q) const;
    bool operator==(const TransitionContext& o) const = default;
    auto key() const { return std::tie(symbol, hole, side); }
    bool operator<(const TransitionContext& o) const { return key() < o.key(); }
};

/// Extracts the transition contexts of `key`: one per child slot, the hole
/// replacing that slot.  With `child` >= 0 only slots holding `child` are
/// produced.
std::vector<TransitionContext> contexts_of(const TransKey& key, int child = -1);

/// Total deterministic weighted tree automaton over a commutative
/// semifield.  Storage is sparse: entries missing from `table` default to
/// (sink, 1) when a sink is designated.  Values are immutable by
/// convention; every algorithm returns a fresh automaton.
struct Wdta {
    Kind kind = Kind::Rational;
    RankedAlphabet alphabet;
    std::vector<std::string> state_names;
    std::vector<bool> finals;
    std::optional<int> sink;
    std::unordered_map<TransKey, TransData, TransKeyHash> table;

    Semifield semifield() const { return Semifield(kind); }
    int n() const { return static_cast<int>(state_names.size()); }

    /// Logical size m = |Sigma(Q)|, independent of sparse storage.
    unsigned long long logical_m() const;

    int add_state(const std::string& name, bool is_final = false);
    std::optional<int> state_index(const std::string& name) const;
    bool is_final(int q) const { return finals.at(q); }

    /// Total transition lookup; throws DomainError when the entry is
    /// missing and no sink is designated.
    TransData lookup(const TransKey& key) const;
    bool is_default(const TransKey& key) const { return !table.count(key); }

    /// Empty result means all invariants hold; each violation names the
    /// offending entry.
    std::vector<std::string> validate() const;

    /// (reached state, accumulated weight) of a tree over Sigma(Q);
    /// state leaves contribute weight one.
    std::pair<int, Weight> run(const TreePtr& t) const;

    /// Recognized weight of a tree of T_Sigma: run weight if the reached
    /// state is final, semifield zero otherwise.
    Weight semantics(const TreePtr& t) const;

    /// sem_q(c) = wt(c[q]) when delta(c[q]) is final, zero otherwise.
    Weight context_semantics(int q, const TreePtr& context) const;

    /// States reachable by some tree of T_Sigma (bottom-up closure,
    /// defaults included).
    std::vector<bool> reachable_states() const;
    bool is_trimmed() const;

    /// Removes unreachable states; semantics unchanged on T_Sigma.
    Wdta trim() const;

    /// s-weighted merge of `q` into `q_target`: entries over Q - {q}
    /// targeting q are redirected to q_target with weight s (x) wt; entries
    /// with q as a child leave the domain.  When `q` is the designated sink
    /// the defaults are materialized first.
    Wdta weighted_merge(int q, const Weight& s, int q_target) const;

    /// States r != q having a transition entry with r as a child and
    /// target q (defaults included when q is the sink).
    std::vector<int> predecessors(int q) const;

    /// Materializes every default entry; throws ResourceError when the
    /// logical size exceeds `budget`.
    Wdta materialized(unsigned long long budget = 20'000'000ull) const;

    TreePtr parse_tree(std::string_view text, bool allow_states = false) const;
    std::string print_tree(const TreePtr& t) const;
};

/// child -> target edge lists of the transition graph, defaults included.
/// Used by reachability analyses (kernel, co-kernel, dead states).
std::vector<std::vector<int>> child_target_edges(const Wdta& a);

/// States q with sem_q identically zero (no accepting context).
std::vector<bool> dead_states(const Wdta& a);

bool structurally_equal(const Wdta& a, const Wdta& b);

} // namespace wta
