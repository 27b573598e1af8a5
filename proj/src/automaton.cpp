#include "wta/automaton.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

namespace wta {

namespace {

// n^k saturated at ULLONG_MAX.
unsigned long long sat_pow(unsigned long long n, int k) {
    unsigned long long r = 1;
    for (int i = 0; i < k; ++i) {
        if (n != 0 && r > std::numeric_limits<unsigned long long>::max() / n) {
            return std::numeric_limits<unsigned long long>::max();
        }
        r *= n;
    }
    return r;
}

unsigned long long sat_add(unsigned long long a, unsigned long long b) {
    return a > std::numeric_limits<unsigned long long>::max() - b
               ? std::numeric_limits<unsigned long long>::max()
               : a + b;
}

// Iterates all tuples of [0,n)^k in lexicographic order.
template <typename Fn>
void for_each_tuple(int n, int k, Fn&& fn) {
    std::vector<int> tuple(k, 0);
    if (n == 0 && k > 0) return;
    while (true) {
        fn(tuple);
        int i = k - 1;
        while (i >= 0 && tuple[i] == n - 1) tuple[i--] = 0;
        if (i < 0) return;
        ++tuple[i];
    }
}

} // namespace

TransKey TransitionContext::plug(int q) const {
    TransKey key;
    key.symbol = symbol;
    key.children = side;
    key.children.insert(key.children.begin() + (hole - 1), q);
    return key;
}

std::vector<TransitionContext> contexts_of(const TransKey& key, int child) {
    std::vector<TransitionContext> out;
    for (int i = 0; i < static_cast<int>(key.children.size()); ++i) {
        if (child >= 0 && key.children[i] != child) continue;
        TransitionContext c;
        c.symbol = key.symbol;
        c.hole = i + 1;
        c.side = key.children;
        c.side.erase(c.side.begin() + i);
        out.push_back(std::move(c));
    }
    return out;
}

unsigned long long Wdta::logical_m() const {
    unsigned long long m = 0;
    for (int s = 0; s < alphabet.size(); ++s) {
        m = sat_add(m, sat_pow(static_cast<unsigned long long>(n()), alphabet.rank(s)));
    }
    return m;
}

int Wdta::add_state(const std::string& name, bool is_final) {
    if (state_index(name)) throw DomainError("duplicate state: " + name);
    state_names.push_back(name);
    finals.push_back(is_final);
    return n() - 1;
}

std::optional<int> Wdta::state_index(const std::string& name) const {
    for (int i = 0; i < n(); ++i) {
        if (state_names[i] == name) return i;
    }
    return std::nullopt;
}

TransData Wdta::lookup(const TransKey& key) const {
    auto it = table.find(key);
    if (it != table.end()) return it->second;
    if (sink) return TransData{*sink, semifield().one()};
    throw DomainError("missing transition entry for symbol '" + alphabet.name(key.symbol) +
                      "' and no sink is designated");
}

std::vector<std::string> Wdta::validate() const {
    std::vector<std::string> out;
    Semifield sf = semifield();

    std::set<std::string> seen;
    for (const auto& name : state_names) {
        if (!seen.insert(name).second) out.push_back("duplicate state name '" + name + "'");
        if (alphabet.find(name)) {
            out.push_back("state name '" + name + "' collides with a symbol");
        }
    }
    if (finals.size() != state_names.size()) out.push_back("final flag vector has wrong size");
    if (sink && (*sink < 0 || *sink >= n())) out.push_back("sink index out of range");
    if (sink && finals[*sink]) out.push_back("sink state '" + state_names[*sink] + "' is final");

    for (const auto& [key, data] : table) {
        std::string where = alphabet.name(key.symbol);
        if (key.symbol < 0 || key.symbol >= alphabet.size()) {
            out.push_back("entry with unknown symbol index");
            continue;
        }
        if (static_cast<int>(key.children.size()) != alphabet.rank(key.symbol)) {
            out.push_back("arity mismatch at \"" + where + "\"");
        }
        bool sink_child = false;
        for (int c : key.children) {
            if (c < 0 || c >= n()) out.push_back("unknown child state at \"" + where + "\"");
            if (sink && c == *sink) sink_child = true;
        }
        if (data.target < 0 || data.target >= n()) {
            out.push_back("unknown target state at \"" + where + "\"");
        }
        if (sf.is_zero(data.weight)) {
            out.push_back("zero-weight violation at \"" + where + "\"");
        } else if (!sf.valid(data.weight)) {
            out.push_back("weight outside carrier at \"" + where + "\"");
        }
        if (sink && sink_child && data.target != *sink) {
            out.push_back("sink is not absorbing at \"" + where + "\"");
        }
    }

    if (!sink && table.size() < logical_m()) {
        std::string entry = "?";
        if (logical_m() <= 1'000'000ull) {
            for (int s = 0; s < alphabet.size() && entry == "?"; ++s) {
                for_each_tuple(n(), alphabet.rank(s), [&](const std::vector<int>& tuple) {
                    if (entry != "?") return;
                    if (!table.count(TransKey{s, tuple})) {
                        entry = alphabet.name(s);
                        if (!tuple.empty()) {
                            entry += '(';
                            for (std::size_t i = 0; i < tuple.size(); ++i) {
                                if (i) entry += ',';
                                entry += state_names[tuple[i]];
                            }
                            entry += ')';
                        }
                    }
                });
            }
        }
        out.push_back("totality violation at \"" + entry + "\"");
    }
    return out;
}

std::pair<int, Weight> Wdta::run(const TreePtr& t) const {
    Semifield sf = semifield();
    switch (t->label.tag) {
        case Label::Tag::Hole:
            throw DomainError("run: tree contains a hole");
        case Label::Tag::State:
            if (t->label.index < 0 || t->label.index >= n()) {
                throw DomainError("run: unknown state leaf");
            }
            return {t->label.index, sf.one()};
        case Label::Tag::Symbol: {
            if (t->label.index < 0 || t->label.index >= alphabet.size()) {
                throw DomainError("run: symbol not in the automaton's alphabet");
            }
            TransKey key;
            key.symbol = t->label.index;
            Weight w = sf.one();
            key.children.reserve(t->children.size());
            for (const auto& c : t->children) {
                auto [st, cw] = run(c);
                key.children.push_back(st);
                w = sf.mul(w, cw);
            }
            TransData data = lookup(key);
            return {data.target, sf.mul(data.weight, w)};
        }
    }
    throw DomainError("run: bad label");
}

Weight Wdta::semantics(const TreePtr& t) const {
    if (t->state_count > 0) throw DomainError("semantics: tree contains state leaves");
    if (t->hole_count > 0) throw DomainError("semantics: tree contains a hole");
    auto [st, w] = run(t);
    return finals[st] ? w : semifield().zero();
}

Weight Wdta::context_semantics(int q, const TreePtr& context) const {
    if (q < 0 || q >= n()) throw DomainError("context_semantics: unknown state");
    if (!is_context(context)) throw DomainError("context_semantics: not a context");
    auto [st, w] = run(substitute(context, make_state(q)));
    return finals[st] ? w : semifield().zero();
}

std::vector<bool> Wdta::reachable_states() const {
    std::vector<bool> reach(n(), false);
    std::deque<int> queue;
    auto mark = [&](int q) {
        if (!reach[q]) {
            reach[q] = true;
            queue.push_back(q);
        }
    };

    // Per-entry count of child slots whose state is not yet reachable.
    std::vector<const TransKey*> keys;
    std::vector<int> pending;
    std::vector<int> targets;
    std::vector<std::vector<int>> occurrences(n());  // state -> entry ids (per slot)
    for (const auto& [key, data] : table) {
        int id = static_cast<int>(keys.size());
        keys.push_back(&key);
        pending.push_back(static_cast<int>(key.children.size()));
        targets.push_back(data.target);
        for (int c : key.children) occurrences[c].push_back(id);
        if (key.children.empty()) mark(data.target);
    }

    auto drain = [&]() {
        while (!queue.empty()) {
            int q = queue.front();
            queue.pop_front();
            for (int id : occurrences[q]) {
                if (--pending[id] == 0) mark(targets[id]);
            }
        }
    };

    drain();
    // A default entry over reachable children makes the sink reachable.
    while (sink && !reach[*sink]) {
        unsigned long long r = 0;
        for (int q = 0; q < n(); ++q) r += reach[q];
        bool found = false;
        for (int s = 0; s < alphabet.size() && !found; ++s) {
            unsigned long long stored = 0;
            for (std::size_t id = 0; id < keys.size(); ++id) {
                if (keys[id]->symbol != s) continue;
                bool all = true;
                for (int c : keys[id]->children) all = all && reach[c];
                stored += all;
            }
            if (stored < sat_pow(r, alphabet.rank(s))) found = true;
        }
        if (!found) break;
        mark(*sink);
        drain();
    }
    return reach;
}

bool Wdta::is_trimmed() const {
    auto reach = reachable_states();
    return std::all_of(reach.begin(), reach.end(), [](bool b) { return b; });
}

Wdta Wdta::trim() const {
    auto reach = reachable_states();
    if (std::all_of(reach.begin(), reach.end(), [](bool b) { return b; })) return *this;

    Wdta out;
    out.kind = kind;
    out.alphabet = alphabet;
    std::vector<int> remap(n(), -1);
    for (int q = 0; q < n(); ++q) {
        if (reach[q]) {
            remap[q] = out.add_state(state_names[q], finals[q]);
        }
    }
    if (sink && reach[*sink]) out.sink = remap[*sink];
    for (const auto& [key, data] : table) {
        bool keep = reach[data.target];
        for (int c : key.children) keep = keep && reach[c];
        if (!keep) continue;
        TransKey nk{key.symbol, {}};
        nk.children.reserve(key.children.size());
        for (int c : key.children) nk.children.push_back(remap[c]);
        out.table.emplace(std::move(nk), TransData{remap[data.target], data.weight});
    }
    if (!out.sink && out.table.size() < out.logical_m()) {
        // Re-establish totality for tables that relied on a removed sink.
        std::string name = "_sink";
        while (out.state_index(name) || out.alphabet.find(name)) name += '_';
        out.sink = out.add_state(name, false);
    }
    return out;
}

Wdta Wdta::weighted_merge(int q, const Weight& s, int q_target) const {
    if (q == q_target) throw DomainError("weighted_merge: q equals target");
    if (q < 0 || q >= n() || q_target < 0 || q_target >= n()) {
        throw DomainError("weighted_merge: state out of range");
    }
    Semifield sf = semifield();
    if (sf.is_zero(s)) throw DomainError("weighted_merge: zero merge weight");

    const Wdta* base = this;
    Wdta mat;
    if (sink && q == *sink) {
        mat = materialized();
        mat.sink.reset();
        base = &mat;
    }

    Wdta out;
    out.kind = kind;
    out.alphabet = alphabet;
    std::vector<int> remap(base->n(), -1);
    for (int i = 0; i < base->n(); ++i) {
        if (i != q) remap[i] = out.add_state(base->state_names[i], base->finals[i]);
    }
    if (base->sink && *base->sink != q) out.sink = remap[*base->sink];
    for (const auto& [key, data] : base->table) {
        if (std::find(key.children.begin(), key.children.end(), q) != key.children.end()) {
            continue;
        }
        TransKey nk{key.symbol, {}};
        nk.children.reserve(key.children.size());
        for (int c : key.children) nk.children.push_back(remap[c]);
        if (data.target == q) {
            out.table.emplace(std::move(nk), TransData{remap[q_target], sf.mul(s, data.weight)});
        } else {
            out.table.emplace(std::move(nk), TransData{remap[data.target], data.weight});
        }
    }
    return out;
}

std::vector<int> Wdta::predecessors(int q) const {
    if (q < 0 || q >= n()) throw DomainError("predecessors: state out of range");
    std::vector<bool> pred(n(), false);
    for (const auto& [key, data] : table) {
        if (data.target != q) continue;
        for (int c : key.children) {
            if (c != q) pred[c] = true;
        }
    }
    if (sink && q == *sink) {
        // Missing tuples default into the sink.
        std::vector<unsigned long long> stored_contain(n(), 0);
        for (const auto& [key, data] : table) {
            std::set<int> distinct(key.children.begin(), key.children.end());
            for (int c : distinct) ++stored_contain[c];
        }
        unsigned long long total_contain = 0;
        for (int s = 0; s < alphabet.size(); ++s) {
            int k = alphabet.rank(s);
            total_contain = sat_add(
                total_contain,
                sat_pow(n(), k) - sat_pow(n() > 0 ? n() - 1 : 0, k));
        }
        for (int r = 0; r < n(); ++r) {
            if (r != q && stored_contain[r] < total_contain) pred[r] = true;
        }
    }
    std::vector<int> out;
    for (int r = 0; r < n(); ++r) {
        if (pred[r]) out.push_back(r);
    }
    return out;
}

Wdta Wdta::materialized(unsigned long long budget) const {
    if (logical_m() > budget) {
        throw ResourceError("materialization exceeds the entry budget");
    }
    Wdta out = *this;
    if (table.size() == logical_m()) return out;
    if (!sink) throw DomainError("incomplete table and no sink to materialize from");
    Weight one = semifield().one();
    for (int s = 0; s < alphabet.size(); ++s) {
        for_each_tuple(n(), alphabet.rank(s), [&](const std::vector<int>& tuple) {
            TransKey key{s, tuple};
            out.table.emplace(std::move(key), TransData{*sink, one});
        });
    }
    return out;
}

TreePtr Wdta::parse_tree(std::string_view text, bool allow_states) const {
    if (!allow_states) return parse_term(text, alphabet);
    return parse_term(text, alphabet, [this](const std::string& name) {
        return state_index(name);
    });
}

std::string Wdta::print_tree(const TreePtr& t) const {
    return print_term(t, alphabet, [this](int q) { return state_names.at(q); });
}

std::vector<std::vector<int>> child_target_edges(const Wdta& a) {
    std::vector<std::set<int>> succ(a.n());
    for (const auto& [key, data] : a.table) {
        for (int c : key.children) succ[c].insert(data.target);
    }
    if (a.sink) {
        // r -> sink whenever some missing tuple contains r.
        std::vector<unsigned long long> stored_contain(a.n(), 0);
        for (const auto& [key, data] : a.table) {
            std::set<int> distinct(key.children.begin(), key.children.end());
            for (int c : distinct) ++stored_contain[c];
        }
        unsigned long long total_contain = 0;
        for (int s = 0; s < a.alphabet.size(); ++s) {
            int k = a.alphabet.rank(s);
            total_contain = sat_add(
                total_contain,
                sat_pow(a.n(), k) - sat_pow(a.n() > 0 ? a.n() - 1 : 0, k));
        }
        for (int r = 0; r < a.n(); ++r) {
            if (stored_contain[r] < total_contain) succ[r].insert(*a.sink);
        }
    }
    std::vector<std::vector<int>> out(a.n());
    for (int q = 0; q < a.n(); ++q) out[q].assign(succ[q].begin(), succ[q].end());
    return out;
}

std::vector<bool> dead_states(const Wdta& a) {
    auto succ = child_target_edges(a);
    std::vector<std::vector<int>> pred(a.n());
    for (int q = 0; q < a.n(); ++q) {
        for (int t : succ[q]) pred[t].push_back(q);
    }
    std::vector<bool> live(a.n(), false);
    std::deque<int> queue;
    for (int q = 0; q < a.n(); ++q) {
        if (a.finals[q]) {
            live[q] = true;
            queue.push_back(q);
        }
    }
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int p : pred[q]) {
            if (!live[p]) {
                live[p] = true;
                queue.push_back(p);
            }
        }
    }
    std::vector<bool> dead(a.n());
    for (int q = 0; q < a.n(); ++q) dead[q] = !live[q];
    return dead;
}

bool structurally_equal(const Wdta& a, const Wdta& b) {
    if (a.kind != b.kind || !(a.alphabet == b.alphabet) || a.state_names != b.state_names ||
        a.finals != b.finals || a.sink != b.sink) {
        return false;
    }
    auto canonical = [](const Wdta& x) {
        auto t = x.table;
        if (x.sink) {
            Weight one = x.semifield().one();
            for (auto it = t.begin(); it != t.end();) {
                if (it->second.target == *x.sink && it->second.weight == one) {
                    it = t.erase(it);
                } else {
                    ++it;
                }
            }
        }
        return t;
    };
    return canonical(a) == canonical(b);
}

} // namespace wta
