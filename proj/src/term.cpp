#include "wta/term.hpp"

#include <boost/functional/hash.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace wta {

int RankedAlphabet::add(const std::string& name, int rank) {
    if (name == "[]") throw DomainError("the hole symbol is reserved");
    if (find(name)) throw DomainError("duplicate symbol: " + name);
    if (rank < 0) throw DomainError("negative rank for symbol: " + name);
    names_.push_back(name);
    ranks_.push_back(rank);
    return size() - 1;
}

std::optional<int> RankedAlphabet::find(const std::string& name) const {
    for (int i = 0; i < size(); ++i) {
        if (names_[i] == name) return i;
    }
    return std::nullopt;
}

bool RankedAlphabet::has_nullary() const {
    return std::any_of(ranks_.begin(), ranks_.end(), [](int r) { return r == 0; });
}

TreePtr make_node(Label label, std::vector<TreePtr> children) {
    auto t = std::make_shared<Tree>();
    t->label = label;
    t->children = std::move(children);
    t->hole_count = label.tag == Label::Tag::Hole ? 1 : 0;
    t->state_count = label.tag == Label::Tag::State ? 1 : 0;
    std::size_t seed = 0;
    boost::hash_combine(seed, static_cast<int>(label.tag));
    boost::hash_combine(seed, label.index);
    for (const auto& c : t->children) {
        t->height = std::max(t->height, c->height + 1);
        t->node_count += c->node_count;
        t->hole_count += c->hole_count;
        t->state_count += c->state_count;
        boost::hash_combine(seed, c->hash);
    }
    t->hash = seed;
    return t;
}

TreePtr make_symbol(int sym, std::vector<TreePtr> children) {
    return make_node(Label{Label::Tag::Symbol, sym}, std::move(children));
}

TreePtr make_state(int state) { return make_node(Label{Label::Tag::State, state}); }

TreePtr make_hole() { return make_node(Label{Label::Tag::Hole, 0}); }

bool tree_equal(const TreePtr& a, const TreePtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || !(a->label == b->label) ||
        a->children.size() != b->children.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a->children.size(); ++i) {
        if (!tree_equal(a->children[i], b->children[i])) return false;
    }
    return true;
}

bool is_context(const TreePtr& t) { return t && t->hole_count == 1; }

namespace {

void collect_positions(const TreePtr& t, Position& prefix, std::vector<Position>& out) {
    out.push_back(prefix);
    for (std::size_t i = 0; i < t->children.size(); ++i) {
        prefix.push_back(static_cast<int>(i) + 1);
        collect_positions(t->children[i], prefix, out);
        prefix.pop_back();
    }
}

std::string position_text(const Position& w) {
    if (w.empty()) return "eps";
    std::string s;
    for (int i : w) {
        if (!s.empty()) s += '.';
        s += std::to_string(i);
    }
    return s;
}

} // namespace

std::vector<Position> positions(const TreePtr& t) {
    std::vector<Position> out;
    Position prefix;
    collect_positions(t, prefix, out);
    return out;
}

TreePtr subtree(const TreePtr& t, const Position& w) {
    TreePtr cur = t;
    for (std::size_t k = 0; k < w.size(); ++k) {
        int i = w[k];
        if (i < 1 || static_cast<std::size_t>(i) > cur->children.size()) {
            throw DomainError("invalid position " + position_text(w));
        }
        cur = cur->children[i - 1];
    }
    return cur;
}

TreePtr substitute(const TreePtr& c, const TreePtr& x) {
    if (c->hole_count != 1) throw DomainError("substitute: not a context");
    if (c->label.tag == Label::Tag::Hole) return x;
    std::vector<TreePtr> children = c->children;
    for (auto& child : children) {
        if (child->hole_count == 1) {
            child = substitute(child, x);
            break;
        }
    }
    return make_node(c->label, std::move(children));
}

namespace {

struct TermParser {
    std::string_view text;
    std::size_t pos = 0;
    const RankedAlphabet& alphabet;
    const std::function<std::optional<int>(const std::string&)>& state_of;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError("term parse error at offset " + std::to_string(pos) + ": " + msg);
    }

    TreePtr parse() {
        skip_ws();
        if (pos + 1 < text.size() && text[pos] == '[' && text[pos + 1] == ']') {
            pos += 2;
            return make_hole();
        }
        std::size_t start = pos;
        if (pos >= text.size() ||
            !(std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            fail("expected identifier or '[]'");
        }
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            ++pos;
        }
        std::string ident(text.substr(start, pos - start));
        skip_ws();
        std::vector<TreePtr> children;
        bool parenthesized = false;
        if (pos < text.size() && text[pos] == '(') {
            parenthesized = true;
            ++pos;
            skip_ws();
            if (pos < text.size() && text[pos] == ')') {
                ++pos;
            } else {
                while (true) {
                    children.push_back(parse());
                    skip_ws();
                    if (pos < text.size() && text[pos] == ',') {
                        ++pos;
                        continue;
                    }
                    if (pos < text.size() && text[pos] == ')') {
                        ++pos;
                        break;
                    }
                    fail("expected ',' or ')'");
                }
            }
        }
        if (auto sym = alphabet.find(ident)) {
            int rk = alphabet.rank(*sym);
            if (static_cast<int>(children.size()) != rk) {
                fail("symbol '" + ident + "' has rank " + std::to_string(rk) + " but " +
                     std::to_string(children.size()) + " arguments were given");
            }
            return make_symbol(*sym, std::move(children));
        }
        if (state_of) {
            if (auto st = state_of(ident)) {
                if (parenthesized && !children.empty()) {
                    fail("state '" + ident + "' cannot have children");
                }
                return make_state(*st);
            }
        }
        fail("unknown identifier '" + ident + "'");
    }
};

} // namespace

TreePtr parse_term(std::string_view text, const RankedAlphabet& alphabet,
                   const std::function<std::optional<int>(const std::string&)>& state_of) {
    TermParser p{text, 0, alphabet, state_of};
    TreePtr t = p.parse();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return t;
}

std::string print_term(const TreePtr& t, const RankedAlphabet& alphabet,
                       const std::function<std::string(int)>& state_name) {
    switch (t->label.tag) {
        case Label::Tag::Hole:
            return "[]";
        case Label::Tag::State:
            return state_name ? state_name(t->label.index)
                              : "q" + std::to_string(t->label.index);
        case Label::Tag::Symbol: {
            std::string s = alphabet.name(t->label.index);
            if (t->children.empty()) return s;
            s += '(';
            for (std::size_t i = 0; i < t->children.size(); ++i) {
                if (i) s += ',';
                s += print_term(t->children[i], alphabet, state_name);
            }
            s += ')';
            return s;
        }
    }
    return "?";
}

} // namespace wta
