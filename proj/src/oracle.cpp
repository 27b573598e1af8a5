#include "wta/oracle.hpp"

#include "wta/minimize.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

namespace wta {

namespace {

using BigInt = boost::multiprecision::cpp_int;

// All shallow transition contexts sigma(q1,...,[],...,qk) over the full
// state set, in (symbol, hole, side tuple) order.
std::vector<TransitionContext> all_shallow_contexts(const Wdta& a, std::size_t budget) {
    std::vector<TransitionContext> out;
    int n = a.n();
    for (int sym = 0; sym < a.alphabet.size(); ++sym) {
        int k = a.alphabet.rank(sym);
        if (k == 0) continue;
        for (int hole = 1; hole <= k; ++hole) {
            std::vector<int> side(static_cast<std::size_t>(k - 1), 0);
            while (true) {
                out.push_back(TransitionContext{sym, hole, side});
                if (out.size() > budget) {
                    throw ResourceError("shallow context enumeration exceeds budget");
                }
                int i = k - 2;
                while (i >= 0 && side[i] == n - 1) side[i--] = 0;
                if (i < 0) break;
                ++side[i];
            }
        }
    }
    return out;
}

void require_trimmed_oracle(const Wdta& a, const char* who) {
    if (!a.is_trimmed()) {
        throw DomainError(std::string(who) + ": automaton must be trimmed");
    }
}

} // namespace

std::vector<TreePtr> enumerate_trees(const RankedAlphabet& sigma, int max_height,
                                     std::size_t budget) {
    std::vector<TreePtr> out;
    if (!sigma.has_nullary() || max_height < 0) return out;
    std::vector<std::vector<TreePtr>> upto(1);  // upto[h] = trees of height <= h
    std::vector<TreePtr> exact;
    for (int sym = 0; sym < sigma.size(); ++sym) {
        if (sigma.rank(sym) == 0) exact.push_back(make_symbol(sym));
    }
    for (int h = 0; h <= max_height; ++h) {
        if (h > 0) {
            exact.clear();
            const auto& lower = upto[h];  // trees of height <= h - 1
            std::size_t cut = upto[h - 1].size();  // prefix of strictly lower trees
            for (int sym = 0; sym < sigma.size(); ++sym) {
                int k = sigma.rank(sym);
                if (k == 0) continue;
                std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
                if (lower.empty()) continue;
                while (true) {
                    bool some_tall = false;
                    for (std::size_t i : idx) some_tall = some_tall || i >= cut;
                    if (some_tall) {
                        std::vector<TreePtr> children;
                        children.reserve(k);
                        for (std::size_t i : idx) children.push_back(lower[i]);
                        exact.push_back(make_symbol(sym, std::move(children)));
                        if (out.size() + exact.size() > budget) {
                            throw ResourceError("tree enumeration exceeds budget");
                        }
                    }
                    int i = k - 1;
                    while (i >= 0 && idx[i] + 1 == lower.size()) idx[i--] = 0;
                    if (i < 0) break;
                    ++idx[i];
                }
            }
        }
        out.insert(out.end(), exact.begin(), exact.end());
        if (out.size() > budget) throw ResourceError("tree enumeration exceeds budget");
        upto.push_back(out);  // trees are appended in height order
    }
    return out;
}

std::vector<TreePtr> enumerate_contexts(const RankedAlphabet& sigma, int max_height,
                                        const std::vector<TreePtr>& side_leaves,
                                        std::size_t budget) {
    std::vector<TreePtr> out;
    if (max_height < 0) return out;
    out.push_back(make_hole());
    std::size_t level_begin = 0;
    // Grow by spine depth; every composite context is one symbol above a
    // previous one, so height <= max_height bounds the spine too.
    for (int depth = 1; depth <= max_height; ++depth) {
        std::size_t level_end = out.size();
        for (std::size_t ci = level_begin; ci < level_end; ++ci) {
            for (int sym = 0; sym < sigma.size(); ++sym) {
                int k = sigma.rank(sym);
                if (k == 0) continue;
                for (int hole = 0; hole < k; ++hole) {
                    std::vector<std::size_t> idx(static_cast<std::size_t>(k - 1), 0);
                    if (k > 1 && side_leaves.empty()) continue;
                    while (true) {
                        std::vector<TreePtr> children;
                        children.reserve(k);
                        std::size_t s = 0;
                        for (int slot = 0; slot < k; ++slot) {
                            if (slot == hole) children.push_back(out[ci]);
                            else children.push_back(side_leaves[idx[s++]]);
                        }
                        TreePtr c = make_symbol(sym, std::move(children));
                        if (c->height <= max_height) {
                            out.push_back(std::move(c));
                            if (out.size() > budget) {
                                throw ResourceError("context enumeration exceeds budget");
                            }
                        }
                        int i = k - 2;
                        while (i >= 0 && idx[i] + 1 == side_leaves.size()) idx[i--] = 0;
                        if (i < 0) break;
                        ++idx[i];
                    }
                }
            }
        }
        level_begin = level_end;
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const TreePtr& x, const TreePtr& y) { return x->height < y->height; });
    return out;
}

namespace {

// compare_languages aggregates trees by the product profile
// (state under A, state under B, weight ratio A/B): whether a tree is a
// mismatch depends only on its profile, so counting and witness
// extraction stay exact without enumerating the full tree space.
struct ProfileInfo {
    int x = 0;
    int y = 0;
    int rho = 0;  // interned ratio id
};

// Ratio ids.  The weight ratio of a tree is a product of per-transition
// weight ratios, so in the common case it can be tracked as a small
// integer vector in which semifield multiplication is componentwise
// addition: prime-power exponents over a coprime factor base of the
// transition weights (rational / max-times, plus a sign slot), or the
// value scaled to an integer by the common denominator (tropical).  That
// keeps the hot tuple loop free of rational arithmetic; when the bounds
// needed for the vector form do not hold, a generic path interning exact
// weights by canonical encoding is used instead.
struct VecHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (std::int64_t x : v) {
            h ^= static_cast<std::size_t>(x);
            h *= 1099511628211ull;
        }
        return h;
    }
};

struct RatioSpace {
    Semifield sf;
    bool fast = false;
    bool sign_slot = false;
    std::vector<BigInt> base;  // coprime basis (rational / max-times)
    BigInt scale = 1;          // common denominator (tropical)

    std::vector<std::vector<std::int64_t>> vecs;
    std::unordered_map<std::vector<std::int64_t>, int, VecHash> vec_ids;
    std::vector<Weight> weights;  // generic path
    std::unordered_map<std::string, int> weight_ids;
    std::vector<std::int64_t> scratch;
    int one_id = 0;

    RatioSpace(const Wdta& a, const Wdta& b, int max_height) : sf(a.semifield()) {
        std::vector<Weight> all;
        for (const auto& [key, data] : a.table) all.push_back(data.weight);
        for (const auto& [key, data] : b.table) all.push_back(data.weight);
        // An absolute bound on nodes per tree at the comparison height,
        // used to rule out overflow of the accumulated vectors.
        int rank = 1;
        for (int sym = 0; sym < a.alphabet.size(); ++sym) {
            rank = std::max(rank, a.alphabet.rank(sym));
        }
        BigInt nodes = 0, layer = 1;
        for (int h = 0; h <= std::min(max_height, 32); ++h) {
            nodes += layer;
            layer *= rank;
        }
        const BigInt limit = BigInt(1) << 62;
        if (max_height <= 32) {
            switch (sf.kind()) {
                case Kind::Boolean:
                    fast = true;  // all transition weights are one
                    break;
                case Kind::Tropical: {
                    for (const Weight& w : all) scale = lcm(scale, denominator(w.value));
                    BigInt top = 0;
                    for (const Weight& w : all) {
                        top = std::max(top, abs(numerator(w.value)) * (scale / denominator(w.value)));
                    }
                    fast = 2 * top * nodes < limit;
                    break;
                }
                case Kind::Rational:
                case Kind::MaxTimes: {
                    sign_slot = true;
                    std::vector<BigInt> input;
                    for (const Weight& w : all) {
                        input.push_back(abs(numerator(w.value)));
                        input.push_back(denominator(w.value));
                    }
                    refine(input);
                    BigInt top = 1;
                    for (const BigInt& v : input) top = std::max(top, v);
                    // crude exponent bound: msb of the largest input value
                    BigInt emax = msb(top) + 1;
                    fast = base.size() <= 64 && 2 * emax * nodes < limit;
                    break;
                }
            }
        }
        if (fast) {
            std::size_t dim = sf.kind() == Kind::Tropical ? 1 : (sign_slot ? base.size() + 1 : 0);
            scratch.assign(dim, 0);
            one_id = intern_vec(scratch);
        } else {
            one_id = intern_weight(sf.one());
        }
    }

    // Splits the inputs into a pairwise coprime base so every input (and
    // hence every transition weight ratio) has a unique exponent vector.
    void refine(const std::vector<BigInt>& input) {
        std::deque<BigInt> work(input.begin(), input.end());
        while (!work.empty()) {
            BigInt n = work.front();
            work.pop_front();
            if (n <= 1) continue;
            for (std::size_t i = 0; i < base.size() && n > 1; ++i) {
                BigInt g = gcd(n, base[i]);
                if (g == 1) continue;
                if (g != base[i]) {
                    work.push_back(base[i] / g);
                    base[i] = g;
                }
                while (n % base[i] == 0) n /= base[i];
            }
            if (n > 1) base.push_back(n);
        }
    }

    int intern_vec(const std::vector<std::int64_t>& v) {
        auto [it, inserted] = vec_ids.emplace(v, static_cast<int>(vecs.size()));
        if (inserted) vecs.push_back(v);
        return it->second;
    }

    int intern_weight(const Weight& w) {
        auto [it, inserted] = weight_ids.emplace(sf.encode(w), static_cast<int>(weights.size()));
        if (inserted) weights.push_back(w);
        return it->second;
    }

    // Exponent vector of a single weight (fast mode).
    std::vector<std::int64_t> vec_of(const Weight& w) const {
        std::vector<std::int64_t> v;
        if (sf.kind() == Kind::Tropical) {
            BigInt k = numerator(w.value) * (scale / denominator(w.value));
            v.push_back(static_cast<std::int64_t>(k));
        } else if (sign_slot) {
            v.assign(base.size() + 1, 0);
            if (w.value < 0) v[0] = 1;
            BigInt num = abs(numerator(w.value)), den = denominator(w.value);
            for (std::size_t i = 0; i < base.size(); ++i) {
                while (num % base[i] == 0) {
                    num /= base[i];
                    ++v[i + 1];
                }
                while (den % base[i] == 0) {
                    den /= base[i];
                    --v[i + 1];
                }
            }
        }
        return v;
    }

    // Ratio of two transition weights.
    int of_ratio(const Weight& num, const Weight& den) {
        if (!fast) return intern_weight(sf.div(num, den));
        std::vector<std::int64_t> v = vec_of(num);
        std::vector<std::int64_t> d = vec_of(den);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d[i];
        if (sign_slot) v[0] &= 1;
        return intern_vec(v);
    }

    // Product of the child ratios and the transition edge ratio.
    int combine(const int* rids, int k, int edge) {
        if (!fast) {
            Weight w = weights[edge];
            for (int i = 0; i < k; ++i) w = sf.mul(w, weights[rids[i]]);
            return intern_weight(w);
        }
        scratch = vecs[edge];
        for (int i = 0; i < k; ++i) {
            const auto& v = vecs[rids[i]];
            for (std::size_t j = 0; j < scratch.size(); ++j) scratch[j] += v[j];
        }
        if (sign_slot) scratch[0] &= 1;
        return intern_vec(scratch);
    }

    bool is_one(int rid) const {
        if (!fast) return weights[rid] == sf.one();
        for (std::int64_t x : vecs[rid]) {
            if (x != 0) return false;
        }
        return true;
    }
};

// Saturating tree counts.  Values below kCap are exact; kCap means "at
// least kCap".  Whether a profile is realizable at all is decided
// combinatorially (see composite_level), so saturation can only
// overestimate magnitudes, never invent or lose a profile.  When an
// overestimate would force a budget failure the caller retries with
// exact big-integer counts.
struct SatCount {
    static constexpr std::uint64_t kCap = std::uint64_t(1) << 62;
    std::uint64_t v = 0;

    SatCount() = default;
    SatCount(std::uint64_t x) : v(x) {}

    friend SatCount operator*(SatCount a, SatCount b) {
        if (a.v == 0 || b.v == 0) return SatCount(0);
        if (a.v >= kCap || b.v >= kCap || a.v > kCap / b.v) return SatCount(kCap);
        return SatCount(a.v * b.v);
    }
    friend SatCount operator-(SatCount a, SatCount b) {
        return a.v >= kCap ? SatCount(kCap) : SatCount(a.v - b.v);
    }
    SatCount& operator+=(SatCount o) {
        v = v >= kCap - o.v ? kCap : v + o.v;
        if (v > kCap) v = kCap;
        return *this;
    }
    bool operator==(const SatCount& o) const { return v == o.v; }
};

inline bool count_exact(const SatCount& c) { return c.v < SatCount::kCap; }
inline bool count_exact(const BigInt&) { return true; }
inline bool exceeds_budget(const SatCount& c, std::size_t b) { return c.v > b; }
inline bool exceeds_budget(const BigInt& c, std::size_t b) { return c > BigInt(b); }
inline bool is_zero(const SatCount& c) { return c.v == 0; }
inline bool is_zero(const BigInt& c) { return c == 0; }

template <typename Count>
struct ProfileDp {
    const Wdta& a;
    const Wdta& b;
    Semifield sf;
    std::size_t budget;
    std::size_t work = 0;

    RatioSpace ratios;
    std::vector<ProfileInfo> profiles;                   // pid -> info
    std::unordered_map<std::uint64_t, int> profile_ids;  // packed -> pid

    // Transition lookups and edge ratios cached per (symbol, child state
    // tuple); the packed form covers ranks <= 2 and small state sets.
    struct Edge {
        int tx, ty, rid;
    };
    std::unordered_map<std::uint64_t, Edge> edges;

    std::vector<std::map<int, Count>> exact;  // per exact height, keyed by pid
    std::vector<std::map<int, Count>> upto;   // per cumulative height

    ProfileDp(const Wdta& a_, const Wdta& b_, int max_height, std::size_t budget_)
        : a(a_), b(b_), sf(a_.semifield()), budget(budget_), ratios(a_, b_, max_height) {}

    int intern_profile(int x, int y, int rid) {
        std::uint64_t key =
            ((static_cast<std::uint64_t>(x) * b.n() + y) << 32) | static_cast<std::uint32_t>(rid);
        auto [it, inserted] = profile_ids.emplace(key, static_cast<int>(profiles.size()));
        if (inserted) profiles.push_back(ProfileInfo{x, y, rid});
        return it->second;
    }

    int nullary_profile(int sym) {
        TransKey k{sym, {}};
        TransData da = a.lookup(k);
        TransData db = b.lookup(k);
        return intern_profile(da.target, db.target, ratios.of_ratio(da.weight, db.weight));
    }

    Edge edge_of(int sym, const int* pids, int k) {
        bool packable = k <= 2 && sym < (1 << 10);
        std::uint64_t key = static_cast<std::uint64_t>(sym) << 48;
        for (int i = 0; i < k && packable; ++i) {
            const ProfileInfo& p = profiles[pids[i]];
            if (p.x >= (1 << 12) || p.y >= (1 << 12)) packable = false;
            else {
                key |= static_cast<std::uint64_t>(p.x) << (24 * i);
                key |= static_cast<std::uint64_t>(p.y) << (24 * i + 12);
            }
        }
        if (packable) {
            auto it = edges.find(key);
            if (it != edges.end()) return it->second;
        }
        TransKey ka{sym, {}}, kb{sym, {}};
        for (int i = 0; i < k; ++i) {
            ka.children.push_back(profiles[pids[i]].x);
            kb.children.push_back(profiles[pids[i]].y);
        }
        TransData da = a.lookup(ka);
        TransData db = b.lookup(kb);
        Edge e{da.target, db.target, ratios.of_ratio(da.weight, db.weight)};
        if (packable) edges.emplace(key, e);
        return e;
    }

    void charge(std::size_t amount = 1) {
        work += amount;
        if (work > 50u * budget) {
            throw ResourceError("language comparison exceeds budget");
        }
    }

    // Iterates every (symbol, child profile tuple) over profiles of height
    // <= h - 1 whose tuple contains at least one profile of exact height
    // h - 1, reporting the parent profile, the child pids, and the exact
    // tree count contributed by the tuple.  Whether a tuple contributes at
    // all is decided by the presence flags, independent of count
    // saturation.
    template <typename Fn>
    void composite_level(int h, Fn&& fn) {
        const auto& lower = upto[h - 1];
        const auto* lower2 = h >= 2 ? &upto[h - 2] : nullptr;
        std::vector<int> pids;
        std::vector<Count> cnt1, cnt2;
        std::vector<char> fresh;  // pid present at exact height h - 1
        for (const auto& [pid, cnt] : lower) {
            pids.push_back(pid);
            cnt1.push_back(cnt);
            Count low = 0;
            if (lower2) {
                auto it = lower2->find(pid);
                if (it != lower2->end()) low = it->second;
            }
            cnt2.push_back(low);
            fresh.push_back(exact[h - 1].count(pid) ? 1 : 0);
        }
        if (pids.empty()) return;
        std::vector<int> child_pids, child_rids;
        for (int sym = 0; sym < a.alphabet.size(); ++sym) {
            int k = a.alphabet.rank(sym);
            if (k == 0) continue;
            std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
            while (true) {
                charge();
                bool any_new = false;
                for (std::size_t i : idx) any_new = any_new || fresh[i];
                if (any_new) {
                    Count full = 1, low = 1;
                    for (std::size_t i : idx) {
                        full = full * cnt1[i];
                        low = low * cnt2[i];
                    }
                    Count count = full - low;
                    child_pids.clear();
                    child_rids.clear();
                    for (std::size_t i : idx) {
                        child_pids.push_back(pids[i]);
                        child_rids.push_back(profiles[pids[i]].rho);
                    }
                    Edge e = edge_of(sym, child_pids.data(), k);
                    int rid = ratios.combine(child_rids.data(), k, e.rid);
                    fn(sym, child_pids, intern_profile(e.tx, e.ty, rid), count);
                }
                int i = k - 1;
                while (i >= 0 && idx[i] + 1 == pids.size()) idx[i--] = 0;
                if (i < 0) break;
                ++idx[i];
            }
        }
    }

    void run(int max_height) {
        exact.resize(max_height + 1);
        upto.resize(max_height + 1);
        for (int sym = 0; sym < a.alphabet.size(); ++sym) {
            if (a.alphabet.rank(sym) != 0) continue;
            exact[0][nullary_profile(sym)] += 1;
        }
        upto[0] = exact[0];
        for (int h = 1; h <= max_height; ++h) {
            composite_level(h, [&](int, const std::vector<int>&, int parent,
                                   const Count& count) { exact[h][parent] += count; });
            upto[h] = upto[h - 1];
            for (const auto& [pid, cnt] : exact[h]) upto[h][pid] += cnt;
            if (profiles.size() > budget) {
                throw ResourceError("language comparison exceeds budget");
            }
        }
    }

    bool is_mismatch(int pid) {
        const ProfileInfo& p = profiles[pid];
        bool fa = a.finals[p.x];
        bool fb = b.finals[p.y];
        if (fa != fb) return true;
        return fa && fb && !ratios.is_one(p.rho);
    }

    // All trees of exact height h realizing `pid`.  The recursion is
    // bounded: every child list size divides into the parent's tree count,
    // which the caller has checked against the budget.
    std::map<std::pair<int, int>, std::vector<TreePtr>> memo;

    const std::vector<TreePtr>& trees_exact(int h, int pid) {
        auto mk = std::make_pair(h, pid);
        auto it = memo.find(mk);
        if (it != memo.end()) return it->second;
        std::vector<TreePtr> result;
        if (h == 0) {
            for (int sym = 0; sym < a.alphabet.size(); ++sym) {
                if (a.alphabet.rank(sym) != 0) continue;
                if (nullary_profile(sym) == pid) result.push_back(make_symbol(sym));
            }
        } else {
            composite_level(h, [&](int sym, const std::vector<int>& child_pids, int parent,
                                   const Count&) {
                if (parent != pid) return;
                std::vector<std::vector<TreePtr>> choices;
                for (int cp : child_pids) choices.push_back(trees_upto(h - 1, cp));
                std::vector<std::size_t> pick(choices.size(), 0);
                for (const auto& list : choices) {
                    if (list.empty()) return;
                }
                while (true) {
                    std::vector<TreePtr> children;
                    bool some_tall = false;
                    for (std::size_t i = 0; i < pick.size(); ++i) {
                        children.push_back(choices[i][pick[i]]);
                        some_tall = some_tall || children.back()->height == h - 1;
                    }
                    if (some_tall) {
                        result.push_back(make_symbol(sym, std::move(children)));
                        charge();
                    }
                    int i = static_cast<int>(pick.size()) - 1;
                    while (i >= 0 && pick[i] + 1 == choices[i].size()) pick[i--] = 0;
                    if (i < 0) break;
                    ++pick[i];
                }
            });
        }
        return memo.emplace(std::move(mk), std::move(result)).first->second;
    }

    std::vector<TreePtr> trees_upto(int h, int pid) {
        std::vector<TreePtr> out;
        for (int hh = 0; hh <= h; ++hh) {
            const auto& part = trees_exact(hh, pid);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
};

} // namespace

MismatchReport compare_languages(const Wdta& a, const Wdta& b, int height, int tail,
                                 std::size_t budget) {
    if (!(a.alphabet == b.alphabet)) {
        throw DomainError("compare_languages: alphabets differ");
    }
    if (a.kind != b.kind) {
        throw DomainError("compare_languages: semifield kinds differ");
    }
    MismatchReport report;
    report.height = height;
    report.tail = tail;
    if (!a.alphabet.has_nullary() || height < 0) return report;

    // Saturating counts first; retry with exact big integers only when a
    // saturated mismatch total would force a budget failure.
    auto attempt = [&]<typename Count>(Count) -> std::optional<MismatchReport> {
        ProfileDp<Count> dp(a, b, height, budget);
        dp.run(height);

        Count total = 0;
        bool exact_total = true;
        for (int h = 0; h <= height; ++h) {
            for (const auto& [pid, cnt] : dp.exact[h]) {
                if (!dp.is_mismatch(pid)) continue;
                total += cnt;
                exact_total = exact_total && count_exact(cnt);
            }
        }
        if (exceeds_budget(total, budget)) {
            if (!exact_total) return std::nullopt;
            throw ResourceError("language comparison: mismatch set exceeds budget");
        }
        MismatchReport out = report;
        for (int h = 0; h <= height; ++h) {
            for (const auto& [pid, cnt] : dp.exact[h]) {
                if (is_zero(cnt) || !dp.is_mismatch(pid)) continue;
                for (const TreePtr& t : dp.trees_exact(h, pid)) {
                    out.mismatches.push_back(Mismatch{t, a.semantics(t), b.semantics(t)});
                }
                if (h >= height - tail) out.clean = false;
            }
        }
        return out;
    };
    if (auto fast = attempt(SatCount{})) return *fast;
    return *attempt(BigInt{});
}

std::optional<Weight> states_equivalent_oracle(const Wdta& a, int q1, int q2) {
    require_trimmed_oracle(a, "states_equivalent_oracle");
    if (q1 < 0 || q1 >= a.n() || q2 < 0 || q2 >= a.n()) {
        throw DomainError("states_equivalent_oracle: state out of range");
    }
    Semifield sf = a.semifield();
    auto contexts = all_shallow_contexts(a, 1'000'000);

    struct Node {
        int x, y, depth;
        Weight rho;
    };
    std::deque<Node> queue;
    std::unordered_set<std::string> visited;
    auto vkey = [&](int x, int y, const Weight& rho) {
        return std::to_string(x) + "|" + std::to_string(y) + "|" + sf.encode(rho);
    };
    queue.push_back(Node{q1, q2, 0, sf.one()});
    visited.insert(vkey(q1, q2, sf.one()));
    std::optional<Weight> s;
    while (!queue.empty()) {
        Node node = queue.front();
        queue.pop_front();
        if (a.finals[node.x] != a.finals[node.y]) return std::nullopt;
        if (a.finals[node.x]) {
            if (!s) s = node.rho;
            else if (!(*s == node.rho)) return std::nullopt;
        }
        if (node.depth == a.n()) continue;
        for (const auto& c : contexts) {
            TransData dx = a.lookup(c.plug(node.x));
            TransData dy = a.lookup(c.plug(node.y));
            Weight rho = sf.mul(sf.div(dx.weight, dy.weight), node.rho);
            if (visited.insert(vkey(dx.target, dy.target, rho)).second) {
                if (visited.size() > 2'000'000) {
                    throw ResourceError("state equivalence oracle exceeds budget");
                }
                queue.push_back(Node{dx.target, dy.target, node.depth + 1, rho});
            }
        }
    }
    return s ? s : std::optional<Weight>(sf.one());
}

namespace {

// Pair-graph core shared by the public oracle and hyper_minimality_check.
//
// Decides the relation directly from its definition: q1 and q2 are
// almost-equivalent iff some s satisfies sem_q1(c) = s (x) sem_q2(c) for
// all but finitely many contexts c.  A context is classified by the chain
// of shallow transition contexts along its hole path; the side subtrees
// contribute the same factor to both runs and cancel in the ratio, so each
// chain step is a pair-graph edge labelled with the weight ratio and a
// flag saying whether the step has infinitely many side-tree realizations
// (some side slot holds a kernel state).  Disagreements recur infinitely
// often - and only then break almost-equivalence - in exactly three ways:
//   * a finality mismatch at a pumpable node (reachable through a cycle or
//     an infinite-multiplicity edge),
//   * a cycle with ratio product != 1 that can still reach a both-final
//     node (divergent ratios, no single s fits),
//   * two distinct accumulated ratios at pumpable both-final nodes.
bool almost_equivalent_pair_graph(const Wdta& a, int q1, int q2) {
    if (q1 == q2) return true;
    int n = a.n();
    Semifield sf = a.semifield();
    auto contexts = all_shallow_contexts(a, 1'000'000);

    std::vector<bool> kernel(n);
    for (int q = 0; q < n; ++q) kernel[q] = kernel_oracle(a, q);

    struct Edge {
        int to = 0;
        Weight ratio{};
        bool infinite = false;  // infinitely many side-tree realizations
    };
    auto pair_id = [n](int x, int y) { return x * n + y; };
    int start = pair_id(q1, q2);

    // Reachable ordered pairs and their labelled edges.
    std::unordered_map<int, std::vector<Edge>> edges;
    std::vector<int> order;
    {
        std::vector<int> stack{start};
        edges.emplace(start, std::vector<Edge>{});
        while (!stack.empty()) {
            int id = stack.back();
            stack.pop_back();
            order.push_back(id);
            int x = id / n, y = id % n;
            auto& out = edges[id];
            for (const auto& c : contexts) {
                TransData dx = a.lookup(c.plug(x));
                TransData dy = a.lookup(c.plug(y));
                bool infinite = false;
                for (int z : c.side) infinite = infinite || kernel[z];
                int nid = pair_id(dx.target, dy.target);
                out.push_back(Edge{nid, sf.div(dx.weight, dy.weight), infinite});
                if (edges.emplace(nid, std::vector<Edge>{}).second) stack.push_back(nid);
            }
        }
    }

    // Pairs on a cycle: nodes of a nontrivial SCC or with a self-loop
    // (iterative Tarjan over the reachable subgraph).
    std::unordered_map<int, int> scc_of;
    std::vector<std::vector<int>> sccs;
    {
        std::unordered_map<int, int> index, low;
        std::vector<int> scc_stack;
        std::unordered_map<int, bool> on_stack;
        int next_index = 0;
        struct Frame { int id; std::size_t pos; };
        for (int root : order) {
            if (index.count(root)) continue;
            std::vector<Frame> dfs{{root, 0}};
            index[root] = low[root] = next_index++;
            scc_stack.push_back(root);
            on_stack[root] = true;
            while (!dfs.empty()) {
                auto& [id, pos] = dfs.back();
                if (pos < edges[id].size()) {
                    int next = edges[id][pos++].to;
                    if (!index.count(next)) {
                        index[next] = low[next] = next_index++;
                        scc_stack.push_back(next);
                        on_stack[next] = true;
                        dfs.push_back({next, 0});
                    } else if (on_stack[next]) {
                        low[id] = std::min(low[id], index[next]);
                    }
                } else {
                    if (low[id] == index[id]) {
                        sccs.emplace_back();
                        int member;
                        do {
                            member = scc_stack.back();
                            scc_stack.pop_back();
                            on_stack[member] = false;
                            scc_of[member] = static_cast<int>(sccs.size()) - 1;
                            sccs.back().push_back(member);
                        } while (member != id);
                    }
                    int done = id;
                    dfs.pop_back();
                    if (!dfs.empty()) {
                        int up = dfs.back().id;
                        low[up] = std::min(low[up], low[done]);
                    }
                }
            }
        }
    }
    std::unordered_map<int, bool> on_cycle;
    for (const auto& members : sccs) {
        bool cyclic = members.size() > 1;
        for (int id : members) {
            for (const auto& e : edges[id]) cyclic = cyclic || e.to == id;
        }
        for (int id : members) on_cycle[id] = cyclic;
    }

    // Pumpable pairs: forward closure of cycle nodes and infinite-edge heads.
    std::unordered_map<int, bool> pumped;
    {
        std::vector<int> stack;
        for (int id : order) {
            if (on_cycle[id] && !pumped[id]) pumped[id] = true, stack.push_back(id);
            for (const auto& e : edges[id]) {
                if (e.infinite && !pumped[e.to]) pumped[e.to] = true, stack.push_back(e.to);
            }
        }
        while (!stack.empty()) {
            int id = stack.back();
            stack.pop_back();
            for (const auto& e : edges[id]) {
                if (!pumped[e.to]) pumped[e.to] = true, stack.push_back(e.to);
            }
        }
    }

    // Recurrent finality mismatch.
    for (int id : order) {
        if (pumped[id] && a.finals[id / n] != a.finals[id % n]) return false;
    }

    // Pairs that can still reach a both-final pair (reverse closure).
    std::unordered_map<int, bool> relevant;
    {
        std::unordered_map<int, std::vector<int>> rev;
        std::vector<int> stack;
        for (int id : order) {
            for (const auto& e : edges[id]) rev[e.to].push_back(id);
            if (a.finals[id / n] && a.finals[id % n] && !relevant[id]) {
                relevant[id] = true;
                stack.push_back(id);
            }
        }
        while (!stack.empty()) {
            int id = stack.back();
            stack.pop_back();
            for (int from : rev[id]) {
                if (!relevant[from]) relevant[from] = true, stack.push_back(from);
            }
        }
    }
    if (!relevant[start]) return true;  // only finality mismatches possible, all finite

    // Divergence check: every cycle that can reach a both-final pair must
    // have ratio product one, otherwise no single s fits.  A consistent
    // potential per SCC certifies this; a self-loop or back edge that
    // violates the potential exposes a product != 1 cycle.
    for (const auto& members : sccs) {
        bool touches = false;
        for (int id : members) touches = touches || (relevant.count(id) && relevant[id]);
        if (!touches || !on_cycle[members.front()]) continue;
        std::unordered_map<int, Weight> phi;
        std::vector<int> stack{members.front()};
        phi[members.front()] = sf.one();
        int scc = scc_of[members.front()];
        while (!stack.empty()) {
            int id = stack.back();
            stack.pop_back();
            for (const auto& e : edges[id]) {
                if (scc_of[e.to] != scc) continue;
                Weight want = sf.mul(phi[id], e.ratio);
                auto it = phi.find(e.to);
                if (it == phi.end()) {
                    phi[e.to] = want;
                    stack.push_back(e.to);
                } else if (!(it->second == want)) {
                    return false;
                }
            }
        }
    }

    // All relevant cycles are ratio-neutral, so the accumulated ratios form
    // a finite set: enumerate them and demand a single recurrent value at
    // pumpable both-final pairs.
    std::set<std::string> ratios;
    {
        struct Node { int id; Weight rho; };
        std::deque<Node> queue{{start, sf.one()}};
        std::set<std::string> seen;
        auto key_of = [&](int id, const Weight& rho) {
            return std::to_string(id) + "|" + sf.encode(rho);
        };
        seen.insert(key_of(start, sf.one()));
        while (!queue.empty()) {
            Node node = queue.front();
            queue.pop_front();
            if (pumped[node.id] && a.finals[node.id / n] && a.finals[node.id % n]) {
                ratios.insert(sf.encode(node.rho));
                if (ratios.size() > 1) return false;
            }
            for (const auto& e : edges[node.id]) {
                if (!(relevant.count(e.to) && relevant[e.to])) continue;
                Weight rho = sf.mul(node.rho, e.ratio);
                if (seen.insert(key_of(e.to, rho)).second) {
                    if (seen.size() > 1'000'000) {
                        throw ResourceError("almost-equivalence oracle exceeds budget");
                    }
                    queue.push_back(Node{e.to, rho});
                }
            }
        }
    }
    return ratios.size() <= 1;
}

void require_minimal(const Wdta& a, const char* who) {
    require_trimmed_oracle(a, who);
    for (int i = 0; i < a.n(); ++i) {
        for (int j = i + 1; j < a.n(); ++j) {
            if (states_equivalent_oracle(a, i, j)) {
                throw DomainError(std::string(who) + ": automaton must be minimal");
            }
        }
    }
}

} // namespace

bool states_almost_equivalent_oracle(const Wdta& a, int q1, int q2) {
    if (q1 < 0 || q1 >= a.n() || q2 < 0 || q2 >= a.n()) {
        throw DomainError("states_almost_equivalent_oracle: state out of range");
    }
    require_minimal(a, "states_almost_equivalent_oracle");
    return almost_equivalent_pair_graph(a, q1, q2);
}

bool kernel_oracle(const Wdta& a, int q) {
    require_trimmed_oracle(a, "kernel_oracle");
    int n = a.n();
    unsigned long long per_level = a.logical_m();
    if (per_level * (2ull * n + 1) > 50'000'000ull) {
        throw ResourceError("kernel oracle exceeds budget");
    }
    std::vector<bool> le(n, false), ex(n, false);
    for (int sym = 0; sym < a.alphabet.size(); ++sym) {
        if (a.alphabet.rank(sym) == 0) ex[a.lookup(TransKey{sym, {}}).target] = true;
    }
    bool hit = n <= 0;
    for (int h = 0; h <= 2 * n; ++h) {
        if (h > 0) {
            std::vector<bool> nex(n, false);
            for (int sym = 0; sym < a.alphabet.size(); ++sym) {
                int k = a.alphabet.rank(sym);
                if (k == 0) continue;
                std::vector<int> ch(static_cast<std::size_t>(k), 0);
                while (true) {
                    bool all_le = true, some_ex = false;
                    for (int c : ch) {
                        all_le = all_le && le[c];
                        some_ex = some_ex || ex[c];
                    }
                    if (all_le && some_ex) nex[a.lookup(TransKey{sym, ch}).target] = true;
                    int i = k - 1;
                    while (i >= 0 && ch[i] == n - 1) ch[i--] = 0;
                    if (i < 0) break;
                    ++ch[i];
                }
            }
            ex = std::move(nex);
        }
        for (int s = 0; s < n; ++s) le[s] = le[s] || ex[s];
        if (h >= n && ex[q]) hit = true;
    }
    return hit;
}

bool cokernel_oracle(const Wdta& a, int q) {
    require_trimmed_oracle(a, "cokernel_oracle");
    int n = a.n();
    auto adj = child_target_edges(a);
    std::vector<bool> g(a.finals.begin(), a.finals.end());  // chains of length 0
    bool hit = false;
    for (int len = 1; len < 2 * n; ++len) {
        std::vector<bool> ng(n, false);
        for (int x = 0; x < n; ++x) {
            for (int t : adj[x]) ng[x] = ng[x] || g[t];
        }
        g = std::move(ng);
        if (len >= n && g[q]) hit = true;
    }
    return hit;
}

HyperMinimalityVerdict hyper_minimality_check(const Wdta& a) {
    Wdta minimal = minimize(a);
    if (minimal.n() != a.n()) return HyperMinimalityVerdict{false, std::nullopt};
    for (int i = 0; i < a.n(); ++i) {
        for (int j = i + 1; j < a.n(); ++j) {
            if (!almost_equivalent_pair_graph(a, i, j)) continue;
            if (!kernel_oracle(a, i) || !kernel_oracle(a, j)) {
                return HyperMinimalityVerdict{false, std::make_pair(i, j)};
            }
        }
    }
    return HyperMinimalityVerdict{true, std::nullopt};
}

Wdta random_wdta(std::uint64_t seed, const RandomBounds& bounds, Kind kind) {
    if (bounds.max_states < 1 || bounds.max_symbols < 1 || bounds.max_rank < 0) {
        throw DomainError("random_wdta: bounds must be positive");
    }
    std::mt19937_64 rng(seed);
    auto draw = [&](int lo, int hi) {  // uniform in [lo, hi], stable across platforms
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };

    Wdta a;
    a.kind = kind;
    int n = draw(1, bounds.max_states);
    for (int q = 0; q < n; ++q) {
        a.add_state("s" + std::to_string(q), draw(0, 1) == 1);
    }
    int nsym = draw(1, bounds.max_symbols);
    for (int s = 0; s < nsym; ++s) {
        std::string name(1, static_cast<char>('a' + s));
        a.alphabet.add(name, s == 0 ? 0 : draw(0, bounds.max_rank));
    }
    Semifield sf(kind);
    auto draw_weight = [&]() -> Weight {
        switch (kind) {
        case Kind::Boolean: return sf.one();
        case Kind::Rational: return Weight{false, Rational(draw(1, 4), draw(1, 4))};
        case Kind::Tropical: return Weight{false, Rational(draw(-2, 4))};
        case Kind::MaxTimes: return Weight{false, Rational(draw(1, 8), 8)};
        }
        throw DomainError("random_wdta: unknown kind");
    };
    for (int sym = 0; sym < nsym; ++sym) {
        int k = a.alphabet.rank(sym);
        std::vector<int> ch(static_cast<std::size_t>(k), 0);
        while (true) {
            a.table.emplace(TransKey{sym, ch}, TransData{draw(0, n - 1), draw_weight()});
            int i = k - 1;
            while (i >= 0 && ch[i] == n - 1) ch[i--] = 0;
            if (i < 0) break;
            ++ch[i];
        }
    }
    return a.trim();
}

Wdta chain_wdta(int n) {
    if (n < 2) throw DomainError("chain_wdta: need at least two states");
    int order = 1;
    while ((1 << order) < n) ++order;
    // Binary de Bruijn sequence via Lyndon-word concatenation.
    std::vector<int> seq;
    std::vector<int> t(order + 1, 0);
    std::function<void(int, int)> db = [&](int u, int v) {
        if (u > order) {
            if (order % v == 0) {
                for (int i = 1; i <= v; ++i) seq.push_back(t[i]);
            }
            return;
        }
        t[u] = t[u - v];
        db(u + 1, v);
        for (int c = t[u - v] + 1; c < 2; ++c) {
            t[u] = c;
            db(u + 1, u);
        }
    };
    db(1, 1);
    int period = static_cast<int>(seq.size());  // 2^order

    // Rotate so the all-ones window sits at the end, then keep the last n
    // characters: the chain terminates in a final self-loop and every pair
    // of distinguishable states separates within O(order) steps.
    int ones_at = -1;
    for (int i = 0; i < period; ++i) {
        bool run = true;
        for (int j = 0; j < order; ++j) run = run && seq[(i + j) % period] == 1;
        if (run) {
            ones_at = i;
            break;
        }
    }
    std::vector<int> word(n);
    int start = (ones_at + order) % period;  // rotation ends right after the 1-run
    for (int i = 0; i < n; ++i) {
        word[i] = seq[((start + period - n + i) % period + period) % period];
    }

    Wdta a;
    a.kind = Kind::Rational;
    int leaf = a.alphabet.add("a", 0);
    int g = a.alphabet.add("g", 1);
    for (int i = 0; i < n; ++i) {
        a.add_state("q" + std::to_string(i + 1), word[i] == 1);
    }
    Weight two{false, Rational(2)};
    a.table.emplace(TransKey{leaf, {}}, TransData{0, Weight{false, Rational(1)}});
    for (int i = 0; i < n; ++i) {
        a.table.emplace(TransKey{g, {i}}, TransData{std::min(i + 1, n - 1), two});
    }
    return a;
}

} // namespace wta
