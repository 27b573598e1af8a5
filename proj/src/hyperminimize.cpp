#include "wta/hyperminimize.hpp"

#include "wta/minimize.hpp"
#include "wta/topology.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace wta {

namespace {

void append_context(std::string& out, const TransitionContext& c) {
    out += std::to_string(c.symbol);
    out += '(';
    out += std::to_string(c.hole);
    for (int s : c.side) {
        out += ',';
        out += std::to_string(s);
    }
    out += ')';
}

} // namespace

Signature standardized_signature(const Wdta& a, const std::vector<bool>& cokernel, int q) {
    if (q < 0 || q >= a.n()) throw DomainError("standardized_signature: state out of range");
    if (static_cast<int>(cokernel.size()) != a.n()) {
        throw DomainError("standardized_signature: co-kernel set has wrong size");
    }
    Semifield sf = a.semifield();
    Signature sig;
    for (const auto& [key, data] : a.table) {
        if (!cokernel[data.target]) continue;  // entries into co-preamble are ignored
        for (auto& c : contexts_of(key, q)) {
            sig.push_back(SignatureTriple{std::move(c), data.target, data.weight});
        }
    }
    std::sort(sig.begin(), sig.end(),
              [](const SignatureTriple& x, const SignatureTriple& y) {
                  return x.context < y.context;
              });
    if (!sig.empty()) {
        Weight norm = sf.inv(sig.front().weight);  // c_q carries weight one
        for (auto& t : sig) t.weight = sf.mul(t.weight, norm);
    }
    return sig;
}

std::string encode_signature(const Semifield& sf, const Signature& sig) {
    std::string out;
    for (const auto& t : sig) {
        append_context(out, t.context);
        out += "->";
        out += std::to_string(t.target);
        out += '@';
        out += sf.encode(t.weight);
        out += ';';
    }
    return out;
}

namespace {

// Mutable working copy for Algorithm 2: flat entry vector with per-state
// incoming and occurrence indices.  Entry ids in the indices may go stale
// after merges; users filter on access.
struct Working {
    Semifield sf;
    std::vector<TransKey> keys;
    std::vector<int> target;
    std::vector<Weight> weight;
    std::vector<bool> entry_alive;
    std::vector<std::vector<int>> incoming;  // target state -> entry ids
    std::vector<std::vector<int>> occurs;    // child state -> entry ids (unique)
    std::unordered_map<TransKey, int, TransKeyHash> index;
    std::vector<bool> alive;
    std::vector<bool> cokernel;

    Working(const Wdta& a, std::vector<bool> cok)
        : sf(a.semifield()), cokernel(std::move(cok)) {
        const Wdta base = a.sink ? a.materialized() : a;
        incoming.resize(base.n());
        occurs.resize(base.n());
        alive.assign(base.n(), true);
        for (const auto& [key, data] : base.table) {
            int id = static_cast<int>(keys.size());
            keys.push_back(key);
            target.push_back(data.target);
            weight.push_back(data.weight);
            entry_alive.push_back(true);
            incoming[data.target].push_back(id);
            std::vector<int> seen;
            for (int c : key.children) {
                if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
                    seen.push_back(c);
                    occurs[c].push_back(id);
                }
            }
            index.emplace(key, id);
        }
    }

    Signature signature(int q) const {
        Signature sig;
        for (int id : occurs[q]) {
            if (!entry_alive[id] || !cokernel[target[id]]) continue;
            for (auto& c : contexts_of(keys[id], q)) {
                sig.push_back(SignatureTriple{std::move(c), target[id], weight[id]});
            }
        }
        std::sort(sig.begin(), sig.end(),
                  [](const SignatureTriple& x, const SignatureTriple& y) {
                      return x.context < y.context;
                  });
        if (!sig.empty()) {
            Weight norm = sf.inv(sig.front().weight);
            for (auto& t : sig) t.weight = sf.mul(t.weight, norm);
        }
        return sig;
    }

    Weight entry_weight(const TransKey& key) const {
        auto it = index.find(key);
        if (it == index.end() || !entry_alive[it->second]) {
            throw DomainError("working automaton: missing entry");
        }
        return weight[it->second];
    }

    // Merge `loser` into `survivor` with factor s; returns the states whose
    // signatures may have changed (predecessors of the loser and co-children
    // of dropped entries).
    std::vector<int> merge(int loser, int survivor, const Weight& s) {
        std::vector<bool> touched_flag(alive.size(), false);
        for (int id : incoming[loser]) {
            if (!entry_alive[id] || target[id] != loser) continue;
            target[id] = survivor;
            weight[id] = sf.mul(s, weight[id]);
            incoming[survivor].push_back(id);
            for (int c : keys[id].children) {
                if (c != loser) touched_flag[c] = true;
            }
        }
        incoming[loser].clear();
        for (int id : occurs[loser]) {
            if (!entry_alive[id]) continue;
            entry_alive[id] = false;
            index.erase(keys[id]);
            for (int c : keys[id].children) {
                if (c != loser) touched_flag[c] = true;
            }
        }
        occurs[loser].clear();
        alive[loser] = false;
        std::vector<int> touched;
        for (std::size_t q = 0; q < touched_flag.size(); ++q) {
            if (touched_flag[q] && alive[q]) touched.push_back(static_cast<int>(q));
        }
        return touched;
    }
};

} // namespace

AlmostEquivalence compute_almost_equivalence(const Wdta& a, const std::vector<bool>& cokernel) {
    if (static_cast<int>(cokernel.size()) != a.n()) {
        throw DomainError("compute_almost_equivalence: co-kernel set has wrong size");
    }
    Semifield sf = a.semifield();
    int n = a.n();
    Working work(a, cokernel);

    AlmostEquivalence res;
    res.block_of.resize(n);
    res.blocks.assign(n, {});
    res.scaling.assign(n, sf.one());
    res.rep_changes.assign(n, 0);
    for (int q = 0; q < n; ++q) {
        res.block_of[q] = q;
        res.blocks[q] = {q};
    }

    std::deque<int> queue;
    std::vector<bool> queued(n, true);
    for (int q = 0; q < n; ++q) queue.push_back(q);
    std::unordered_map<std::string, int> buckets;

    auto enqueue = [&](int q) {
        if (!queued[q]) {
            queued[q] = true;
            queue.push_back(q);
        }
    };

    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        queued[q] = false;
        if (!work.alive[q]) continue;

        Signature sig = work.signature(q);
        std::string key = encode_signature(sf, sig);
        auto it = buckets.find(key);
        if (it != buckets.end() && it->second != q) {
            int other = it->second;
            // Drop stale buckets: `other` may have died or changed signature.
            if (work.alive[other] &&
                encode_signature(sf, work.signature(other)) == key) {
                int survivor = other;
                int loser = q;
                // the larger block survives; ties keep the stored state
                if (res.blocks[res.block_of[q]].size() >
                    res.blocks[res.block_of[other]].size()) {
                    survivor = q;
                    loser = other;
                }
                Weight s = sf.one();
                if (!sig.empty()) {
                    // f(loser) = wt(c_q[loser]) / wt(c_q[survivor]) for the
                    // least context c_q of the shared signature.
                    const TransitionContext& cq = sig.front().context;
                    s = sf.div(work.entry_weight(cq.plug(loser)),
                               work.entry_weight(cq.plug(survivor)));
                }
                for (int r : work.merge(loser, survivor, s)) enqueue(r);
                ++res.merges;
                int bs = res.block_of[survivor];
                int bl = res.block_of[loser];
                for (int r : res.blocks[bl]) {
                    res.scaling[r] = sf.mul(res.scaling[r], s);
                    res.block_of[r] = bs;
                    ++res.rep_changes[r];
                    res.blocks[bs].push_back(r);
                }
                res.blocks[bl].clear();
                buckets[key] = survivor;
                enqueue(survivor);
                continue;
            }
        }
        buckets[key] = q;
    }

    // Compact block ids to the surviving partition, ordered by least member.
    std::vector<std::vector<int>> final_blocks;
    std::vector<int> final_block_of(n, -1);
    std::vector<int> survivors;
    std::vector<int> seen(n, -1);
    for (int q = 0; q < n; ++q) {
        int b = res.block_of[q];
        if (seen[b] == -1) {
            seen[b] = static_cast<int>(final_blocks.size());
            final_blocks.push_back({});
            // the block id in res.block_of points at the survivor's own
            // initial singleton id, which is the survivor state
            survivors.push_back(b);
        }
        final_block_of[q] = seen[b];
        final_blocks[seen[b]].push_back(q);
    }
    res.blocks = std::move(final_blocks);
    res.block_of = std::move(final_block_of);
    res.survivor = std::move(survivors);
    return res;
}

Wdta merge_states(const Wdta& a, const std::vector<bool>& kernel, const AlmostEquivalence& ae) {
    int n = a.n();
    if (static_cast<int>(ae.block_of.size()) != n ||
        static_cast<int>(kernel.size()) != n) {
        throw DomainError("merge_states: inputs do not match the automaton's state set");
    }
    Semifield sf = a.semifield();

    // Representative: a kernel member when one exists (the survivor if it
    // is one), otherwise the Algorithm-2 survivor.
    int nblocks = static_cast<int>(ae.blocks.size());
    std::vector<int> rep(nblocks, -1);
    for (int b = 0; b < nblocks; ++b) {
        int surv = ae.survivor[b];
        if (kernel[surv]) {
            rep[b] = surv;
        } else {
            for (int q : ae.blocks[b]) {
                if (kernel[q]) {
                    rep[b] = q;
                    break;
                }
            }
            if (rep[b] == -1) rep[b] = surv;
        }
    }

    // Survivor set: representatives plus kernel members.  All merges
    // commute, so the quotient is built in one pass.
    std::vector<bool> keep(n, false);
    std::vector<int> merge_target(n, -1);
    std::vector<Weight> merge_weight(n, sf.one());
    for (int q = 0; q < n; ++q) {
        int b = ae.block_of[q];
        if (q == rep[b] || kernel[q]) {
            keep[q] = true;
        } else {
            merge_target[q] = rep[b];
            merge_weight[q] = sf.div(ae.scaling[q], ae.scaling[rep[b]]);
        }
    }

    const Wdta* base = &a;
    Wdta mat;
    if (a.sink && !keep[*a.sink]) {
        mat = a.materialized();
        base = &mat;
    }

    Wdta out;
    out.kind = a.kind;
    out.alphabet = a.alphabet;
    std::vector<int> new_index(n, -1);
    for (int q = 0; q < n; ++q) {
        if (keep[q]) new_index[q] = out.add_state(a.state_names[q], a.finals[q]);
    }
    if (a.sink && keep[*a.sink]) out.sink = new_index[*a.sink];
    Weight one = sf.one();
    for (const auto& [key, data] : base->table) {
        bool all_kept = true;
        for (int c : key.children) all_kept = all_kept && keep[c];
        if (!all_kept) continue;
        TransKey nk{key.symbol, {}};
        nk.children.reserve(key.children.size());
        for (int c : key.children) nk.children.push_back(new_index[c]);
        TransData nd;
        if (keep[data.target]) {
            nd = TransData{new_index[data.target], data.weight};
        } else {
            nd = TransData{new_index[merge_target[data.target]],
                           sf.mul(merge_weight[data.target], data.weight)};
        }
        if (out.sink && nd.target == *out.sink && nd.weight == one) continue;
        out.table.emplace(std::move(nk), std::move(nd));
    }
    return out;
}

HyperminimizeResult hyper_minimize(const Wdta& a) {
    Wdta trimmed = a.trim();
    Wdta minimal = minimize(trimmed);
    auto kernel = kernel_states(minimal);
    auto cokernel = cokernel_states(minimal);
    AlmostEquivalence ae = compute_almost_equivalence(minimal, cokernel);
    Wdta out = merge_states(minimal, kernel, ae);

    HyperminimizeReport report;
    report.n_input = a.n();
    report.m_input = a.logical_m();
    report.n_minimal = minimal.n();
    report.n_output = out.n();
    report.m_output = out.logical_m();
    Semifield sf = a.semifield();
    for (const auto& block : ae.blocks) {
        std::vector<std::string> names;
        for (int q : block) names.push_back(minimal.state_names[q]);
        report.blocks.push_back(std::move(names));
    }
    for (int q = 0; q < minimal.n(); ++q) {
        report.scaling.emplace_back(minimal.state_names[q], sf.print(ae.scaling[q]));
    }
    for (int q = 0; q < minimal.n(); ++q) {
        if (kernel[q]) report.kernel.push_back(minimal.state_names[q]);
        if (cokernel[q]) report.cokernel.push_back(minimal.state_names[q]);
    }
    report.rep_changes = ae.rep_changes;
    report.max_rep_changes =
        ae.rep_changes.empty() ? 0 : *std::max_element(ae.rep_changes.begin(), ae.rep_changes.end());
    return HyperminimizeResult{std::move(out), std::move(report)};
}

std::string HyperminimizeReport::to_text() const {
    std::ostringstream out;
    out << "states.input " << n_input << "\n";
    out << "states.minimal " << n_minimal << "\n";
    out << "states.output " << n_output << "\n";
    out << "size.input " << m_input << "\n";
    out << "size.output " << m_output << "\n";
    out << "kernel";
    for (const auto& s : kernel) out << " " << s;
    out << "\n";
    out << "cokernel";
    for (const auto& s : cokernel) out << " " << s;
    out << "\n";
    for (const auto& block : blocks) {
        out << "block";
        for (const auto& s : block) out << " " << s;
        out << "\n";
    }
    for (const auto& [state, factor] : scaling) {
        out << "scale " << state << " " << factor << "\n";
    }
    out << "rep-changes.max " << max_rep_changes << "\n";
    return out.str();
}

} // namespace wta
