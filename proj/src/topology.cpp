#include "wta/topology.hpp"

#include <algorithm>
#include <deque>

namespace wta {

namespace {

void require_trimmed(const Wdta& a) {
    if (!a.is_trimmed()) {
        throw DomainError("automaton must be trimmed (unreachable states present)");
    }
}

// Iterative Tarjan; returns component index per state and flags the
// nontrivial components (size > 1 or self-loop).
struct SccResult {
    std::vector<int> comp;
    std::vector<bool> nontrivial;
};

SccResult tarjan(const std::vector<std::vector<int>>& succ) {
    int n = static_cast<int>(succ.size());
    SccResult res;
    res.comp.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [v, child] = frames.back();
            if (child < succ[v].size()) {
                int w = succ[v][child++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    int comp_id = static_cast<int>(res.nontrivial.size());
                    int size = 0;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        res.comp[w] = comp_id;
                        ++size;
                        if (w == v) break;
                    }
                    res.nontrivial.push_back(size > 1);
                }
                int done = v;
                frames.pop_back();
                if (!frames.empty()) {
                    low[frames.back().v] = std::min(low[frames.back().v], low[done]);
                }
            }
        }
    }
    return res;
}

std::vector<bool> cycle_states(const Wdta& a, const std::vector<std::vector<int>>& succ) {
    auto scc = tarjan(succ);
    std::vector<bool> cyc(a.n(), false);
    for (int q = 0; q < a.n(); ++q) {
        if (scc.nontrivial[scc.comp[q]] ||
            std::find(succ[q].begin(), succ[q].end(), q) != succ[q].end()) {
            cyc[q] = true;
        }
    }
    return cyc;
}

} // namespace

std::vector<bool> kernel_states(const Wdta& a) {
    require_trimmed(a);
    auto succ = child_target_edges(a);
    auto cyc = cycle_states(a, succ);

    // Kernel = forward closure of the cycle states.
    std::vector<bool> kernel = cyc;
    std::deque<int> queue;
    for (int q = 0; q < a.n(); ++q) {
        if (kernel[q]) queue.push_back(q);
    }
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int t : succ[q]) {
            if (!kernel[t]) {
                kernel[t] = true;
                queue.push_back(t);
            }
        }
    }
    return kernel;
}

std::vector<bool> cokernel_states(const Wdta& a) {
    require_trimmed(a);
    auto succ = child_target_edges(a);
    auto cyc = cycle_states(a, succ);

    std::vector<std::vector<int>> pred(a.n());
    for (int q = 0; q < a.n(); ++q) {
        for (int t : succ[q]) pred[t].push_back(q);
    }
    // Backward closure from F.
    std::vector<bool> reaches_final(a.n(), false);
    std::deque<int> queue;
    for (int q = 0; q < a.n(); ++q) {
        if (a.finals[q]) {
            reaches_final[q] = true;
            queue.push_back(q);
        }
    }
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int p : pred[q]) {
            if (!reaches_final[p]) {
                reaches_final[p] = true;
                queue.push_back(p);
            }
        }
    }
    // Backward closure from cycle states that still reach F: a state has
    // unboundedly long accepting chains iff it reaches such a cycle.
    std::vector<bool> cokernel(a.n(), false);
    for (int q = 0; q < a.n(); ++q) {
        if (cyc[q] && reaches_final[q]) {
            cokernel[q] = true;
            queue.push_back(q);
        }
    }
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int p : pred[q]) {
            if (!cokernel[p]) {
                cokernel[p] = true;
                queue.push_back(p);
            }
        }
    }
    return cokernel;
}

StateClassification classify_states(const Wdta& a) {
    return StateClassification{kernel_states(a), cokernel_states(a)};
}

} // namespace wta
