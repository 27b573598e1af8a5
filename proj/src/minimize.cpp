#include "wta/minimize.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace wta {

namespace {

// Entry occurrence index: per state, the (entry id, slot) pairs where it
// appears as a child.
struct Occurrences {
    std::vector<const TransKey*> keys;
    std::vector<TransData> data;
    std::vector<std::vector<int>> by_child;  // state -> entry ids (deduped)

    explicit Occurrences(const Wdta& a) : by_child(a.n()) {
        for (const auto& [key, d] : a.table) {
            int id = static_cast<int>(keys.size());
            keys.push_back(&key);
            data.push_back(d);
            int prev = -1;
            std::vector<int> seen;
            for (int c : key.children) {
                (void)prev;
                if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
                    seen.push_back(c);
                    by_child[c].push_back(id);
                }
            }
        }
    }
};

} // namespace

EquivalenceResult compute_equivalence(const Wdta& a) {
    if (!a.is_trimmed()) throw DomainError("compute_equivalence: automaton must be trimmed");
    if (!a.sink && a.table.size() < a.logical_m()) {
        throw DomainError("compute_equivalence: automaton must be total");
    }
    Semifield sf = a.semifield();
    int n = a.n();
    EquivalenceResult res;
    res.dead = dead_states(a);
    res.lambda.assign(n, sf.one());

    Occurrences occ(a);

    // Hole distance to an accepting context; final states anchor at the
    // bare hole.
    constexpr int kNoDist = -1;
    std::vector<int> dist(n, kNoDist);
    std::deque<int> queue;
    for (int q = 0; q < n; ++q) {
        if (a.finals[q]) {
            dist[q] = 0;
            queue.push_back(q);
        }
    }
    // predecessor lists over live targets
    std::vector<std::vector<int>> pred(n);
    for (std::size_t id = 0; id < occ.keys.size(); ++id) {
        if (res.dead[occ.data[id].target]) continue;
        for (int c : occ.keys[id]->children) pred[occ.data[id].target].push_back(c);
    }
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int p : pred[q]) {
            if (dist[p] == kNoDist) {
                dist[p] = dist[q] + 1;
                queue.push_back(p);
            }
        }
    }

    // Pushing weight along the least distance-decreasing context.
    std::vector<Weight> push(n, sf.one());
    std::vector<int> order(n);
    for (int q = 0; q < n; ++q) order[q] = q;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return std::make_pair(dist[x], x) < std::make_pair(dist[y], y);
    });
    for (int q : order) {
        if (res.dead[q] || dist[q] <= 0) continue;
        bool found = false;
        TransitionContext best;
        Weight w{};
        int target = -1;
        for (int id : occ.by_child[q]) {
            if (dist[occ.data[id].target] != dist[q] - 1) continue;
            for (auto& c : contexts_of(*occ.keys[id], q)) {
                if (!found || c < best) {
                    found = true;
                    best = std::move(c);
                    w = occ.data[id].weight;
                    target = occ.data[id].target;
                }
            }
        }
        if (!found) throw DomainError("compute_equivalence: broken distance structure");
        push[q] = sf.mul(w, push[target]);
    }

    // Moore refinement on pushed rows; dead states form one frozen block.
    std::vector<int> block(n, 0);
    int block_count = 1;
    using Row = std::vector<std::tuple<int, int, std::vector<int>, int, std::string>>;
    for (int round = 0; round <= n + 1; ++round) {
        std::map<std::pair<int, std::pair<int, Row>>, int> ids;
        std::vector<int> next(n, -1);
        for (int q = 0; q < n; ++q) {
            std::pair<int, std::pair<int, Row>> sig;
            if (res.dead[q]) {
                sig.first = -1;
            } else {
                sig.first = a.finals[q] ? 1 : 0;
                sig.second.first = block[q];
                Row& row = sig.second.second;
                for (int id : occ.by_child[q]) {
                    int t = occ.data[id].target;
                    if (res.dead[t]) continue;
                    Weight norm = sf.mul(occ.data[id].weight, sf.div(push[t], push[q]));
                    for (auto& c : contexts_of(*occ.keys[id], q)) {
                        row.emplace_back(c.symbol, c.hole, c.side, block[t], sf.encode(norm));
                    }
                }
                std::sort(row.begin(), row.end());
            }
            auto [it, inserted] = ids.emplace(std::move(sig), static_cast<int>(ids.size()));
            next[q] = it->second;
        }
        int count = static_cast<int>(ids.size());
        block = std::move(next);
        if (count == block_count) break;
        block_count = count;
    }

    // Renumber blocks by least member and pick representatives.
    res.block_of.assign(n, -1);
    std::vector<int> first(block_count, -1);
    res.representative.clear();
    for (int q = 0; q < n; ++q) {
        if (first[block[q]] == -1) {
            first[block[q]] = static_cast<int>(res.representative.size());
            res.representative.push_back(q);
        }
        res.block_of[q] = first[block[q]];
    }
    // The dead block is represented by the sink when one is designated.
    if (a.sink && res.dead[*a.sink]) {
        res.representative[res.block_of[*a.sink]] = *a.sink;
    }
    for (int q = 0; q < n; ++q) {
        int rep = res.representative[res.block_of[q]];
        res.lambda[q] = res.dead[q] ? sf.one() : sf.div(push[q], push[rep]);
    }
    return res;
}

Wdta minimize(const Wdta& a) {
    if (!a.sink && a.table.size() < a.logical_m()) {
        throw DomainError("minimize: automaton must be total");
    }
    Wdta t = a.trim();
    EquivalenceResult eq = compute_equivalence(t);
    int n = t.n();
    bool all_singleton = static_cast<int>(eq.representative.size()) == n;
    if (all_singleton) return t;

    Semifield sf = t.semifield();
    Wdta out;
    out.kind = t.kind;
    out.alphabet = t.alphabet;
    std::vector<int> new_index(n, -1);
    std::vector<int> reps = eq.representative;
    std::sort(reps.begin(), reps.end());
    for (int q : reps) new_index[q] = out.add_state(t.state_names[q], t.finals[q]);
    if (t.sink) out.sink = new_index[eq.representative[eq.block_of[*t.sink]]];

    Weight one = sf.one();
    for (const auto& [key, data] : t.table) {
        bool keep = true;
        for (int c : key.children) {
            keep = keep && (eq.representative[eq.block_of[c]] == c);
        }
        if (!keep) continue;
        TransKey nk{key.symbol, {}};
        nk.children.reserve(key.children.size());
        for (int c : key.children) nk.children.push_back(new_index[c]);
        int rep = eq.representative[eq.block_of[data.target]];
        TransData nd{new_index[rep], sf.mul(eq.lambda[data.target], data.weight)};
        if (out.sink && nd.target == *out.sink && nd.weight == one) continue;
        out.table.emplace(std::move(nk), std::move(nd));
    }
    return out.trim();
}

} // namespace wta
