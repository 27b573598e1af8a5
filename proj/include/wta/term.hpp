#pragma once

#include "wta/semifield.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wta {

/// Error raised by the text parsers (terms and automaton files).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ranked alphabet: symbols in declaration order, names unique.
/// The hole "[]" is reserved and never a member.
class RankedAlphabet {
public:
    int add(const std::string& name, int rank);
    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int sym) const { return names_[sym]; }
    int rank(int sym) const { return ranks_[sym]; }
    std::optional<int> find(const std::string& name) const;
    bool has_nullary() const;

    bool operator==(const RankedAlphabet& o) const = default;

private:
    std::vector<std::string> names_;
    std::vector<int> ranks_;
};

struct Label {
    enum class Tag { Symbol, State, Hole };
    Tag tag = Tag::Hole;
    int index = 0;  // symbol or state index, unused for Hole

    bool operator==(const Label& o) const = default;
};

struct Tree;
using TreePtr = std::shared_ptr<const Tree>;

/// Immutable tree node with precomputed height, size and hash.
/// State labels occur only at leaves; the hole only inside contexts.
struct Tree {
    Label label;
    std::vector<TreePtr> children;
    int height = 0;
    int node_count = 1;
    int hole_count = 0;
    int state_count = 0;
    std::size_t hash = 0;
};

TreePtr make_node(Label label, std::vector<TreePtr> children = {});
TreePtr make_symbol(int sym, std::vector<TreePtr> children = {});
TreePtr make_state(int state);
TreePtr make_hole();

bool tree_equal(const TreePtr& a, const TreePtr& b);
bool is_context(const TreePtr& t);

using Position = std::vector<int>;  // 1-based child indices, empty = root

std::vector<Position> positions(const TreePtr& t);
TreePtr subtree(const TreePtr& t, const Position& w);

/// Replaces the unique hole of `c` by `x`; yields a context again when `x`
/// is itself a context.
TreePtr substitute(const TreePtr& c, const TreePtr& x);

/// Parses `name(child,child)`; nullaries may omit parentheses, the hole is
/// spelled `[]`.  `state_of` resolves identifiers that are not symbols; it
/// may be null when state leaves are not allowed.
TreePtr parse_term(std::string_view text, const RankedAlphabet& alphabet,
                   const std::function<std::optional<int>(const std::string&)>& state_of = nullptr);

std::string print_term(const TreePtr& t, const RankedAlphabet& alphabet,
                       const std::function<std::string(int)>& state_name = nullptr);

struct TreePtrHash {
    std::size_t operator()(const TreePtr& t) const { return t ? t->hash : 0; }
};
struct TreePtrEq {
    bool operator()(const TreePtr& a, const TreePtr& b) const { return tree_equal(a, b); }
};

} // namespace wta
