#include "wta/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace wta {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == '#') break;
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

[[noreturn]] void fail(int lineno, const std::string& msg) {
    throw ParseError("line " + std::to_string(lineno) + ": " + msg);
}

// trans SYMBOL(q1,...,qk) -> TARGET @ WEIGHT, already split into tokens
// after the keyword.  The left-hand side may itself contain spaces, so we
// re-join and split on "->" / "@".
struct TransLine {
    std::string lhs, target, weight;
};

TransLine split_trans(const std::vector<std::string>& toks, int lineno) {
    std::string joined;
    for (std::size_t i = 1; i < toks.size(); ++i) {
        if (i > 1) joined += ' ';
        joined += toks[i];
    }
    auto arrow = joined.find("->");
    auto at = joined.rfind('@');
    if (arrow == std::string::npos || at == std::string::npos || at < arrow) {
        fail(lineno, "expected 'trans LHS -> STATE @ WEIGHT'");
    }
    auto strip = [](std::string s) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    TransLine t;
    t.lhs = strip(joined.substr(0, arrow));
    t.target = strip(joined.substr(arrow + 2, at - arrow - 2));
    t.weight = strip(joined.substr(at + 1));
    if (t.lhs.empty() || t.target.empty() || t.weight.empty()) {
        fail(lineno, "expected 'trans LHS -> STATE @ WEIGHT'");
    }
    return t;
}

} // namespace

Wdta parse_automaton(std::string_view text) {
    Wdta a;
    bool have_kind = false;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;

    struct PendingTrans {
        TransLine t;
        int lineno;
    };
    std::vector<PendingTrans> pending;
    std::string sink_name;
    int sink_line = 0;

    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "semifield") {
            if (toks.size() != 2) fail(lineno, "expected 'semifield KIND'");
            try {
                a.kind = parse_kind(toks[1]);
            } catch (const DomainError& e) {
                fail(lineno, e.what());
            }
            have_kind = true;
        } else if (kw == "sig") {
            if (toks.size() != 3) fail(lineno, "expected 'sig NAME RANK'");
            try {
                a.alphabet.add(toks[1], std::stoi(toks[2]));
            } catch (const DomainError& e) {
                fail(lineno, e.what());
            } catch (const std::exception&) {
                fail(lineno, "malformed rank '" + toks[2] + "'");
            }
        } else if (kw == "state") {
            if (toks.size() < 2) fail(lineno, "expected 'state NAME+'");
            for (std::size_t i = 1; i < toks.size(); ++i) {
                try {
                    a.add_state(toks[i]);
                } catch (const DomainError& e) {
                    fail(lineno, e.what());
                }
            }
        } else if (kw == "final") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                auto q = a.state_index(toks[i]);
                if (!q) fail(lineno, "unknown state '" + toks[i] + "'");
                a.finals[*q] = true;
            }
        } else if (kw == "sink") {
            if (toks.size() != 2) fail(lineno, "expected 'sink NAME'");
            if (!sink_name.empty()) fail(lineno, "duplicate sink declaration");
            sink_name = toks[1];
            sink_line = lineno;
        } else if (kw == "trans") {
            pending.push_back({split_trans(toks, lineno), lineno});
        } else {
            fail(lineno, "unknown keyword '" + kw + "'");
        }
    }

    if (!have_kind) throw ParseError("missing 'semifield KIND' header");
    if (!sink_name.empty()) {
        auto q = a.state_index(sink_name);
        if (!q) fail(sink_line, "unknown sink state '" + sink_name + "'");
        a.sink = *q;
    }

    Semifield sf = a.semifield();
    for (const auto& [t, tl] : pending) {
        // LHS grammar: NAME or NAME(STATE,...,STATE)
        TransKey key;
        std::string sym = t.lhs;
        std::vector<std::string> child_names;
        auto paren = t.lhs.find('(');
        if (paren != std::string::npos) {
            if (t.lhs.back() != ')') fail(tl, "unbalanced parenthesis in '" + t.lhs + "'");
            sym = t.lhs.substr(0, paren);
            std::string inner = t.lhs.substr(paren + 1, t.lhs.size() - paren - 2);
            std::string cur;
            for (char ch : inner + ",") {
                if (ch == ',') {
                    auto b = cur.find_first_not_of(" \t");
                    auto e = cur.find_last_not_of(" \t");
                    if (b == std::string::npos) fail(tl, "empty child state in '" + t.lhs + "'");
                    child_names.push_back(cur.substr(b, e - b + 1));
                    cur.clear();
                } else {
                    cur += ch;
                }
            }
        }
        auto s = a.alphabet.find(sym);
        if (!s) fail(tl, "unknown symbol '" + sym + "'");
        key.symbol = *s;
        if (static_cast<int>(child_names.size()) != a.alphabet.rank(*s)) {
            fail(tl, "arity mismatch: symbol '" + sym + "' has rank " +
                         std::to_string(a.alphabet.rank(*s)));
        }
        for (const auto& cn : child_names) {
            auto q = a.state_index(cn);
            if (!q) fail(tl, "unknown state '" + cn + "'");
            key.children.push_back(*q);
        }
        auto target = a.state_index(t.target);
        if (!target) fail(tl, "unknown state '" + t.target + "'");
        Weight w;
        try {
            w = sf.parse(t.weight);
        } catch (const DomainError& e) {
            fail(tl, e.what());
        }
        if (sf.is_zero(w)) fail(tl, "zero transition weight");
        if (a.table.count(key)) fail(tl, "duplicate transition for '" + t.lhs + "'");
        a.table.emplace(std::move(key), TransData{*target, w});
    }

    auto violations = a.validate();
    if (!violations.empty()) {
        std::string msg = "invalid automaton:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw ParseError(msg);
    }
    return a;
}

std::string serialize_automaton(const Wdta& a) {
    std::ostringstream out;
    Semifield sf = a.semifield();
    out << "semifield " << kind_name(a.kind) << "\n";
    for (int s = 0; s < a.alphabet.size(); ++s) {
        out << "sig " << a.alphabet.name(s) << " " << a.alphabet.rank(s) << "\n";
    }
    if (a.n() > 0) {
        out << "state";
        for (const auto& name : a.state_names) out << " " << name;
        out << "\n";
    }
    out << "final";
    for (int q = 0; q < a.n(); ++q) {
        if (a.finals[q]) out << " " << a.state_names[q];
    }
    out << "\n";
    if (a.sink) out << "sink " << a.state_names[*a.sink] << "\n";

    std::map<std::pair<int, std::vector<int>>, TransData> sorted;
    Weight one = sf.one();
    for (const auto& [key, data] : a.table) {
        if (a.sink && data.target == *a.sink && data.weight == one) continue;
        sorted.emplace(std::make_pair(key.symbol, key.children), data);
    }
    for (const auto& [lhs, data] : sorted) {
        out << "trans " << a.alphabet.name(lhs.first);
        if (!lhs.second.empty()) {
            out << "(";
            for (std::size_t i = 0; i < lhs.second.size(); ++i) {
                if (i) out << ",";
                out << a.state_names[lhs.second[i]];
            }
            out << ")";
        }
        out << " -> " << a.state_names[data.target] << " @ " << sf.print(data.weight) << "\n";
    }
    return out.str();
}

} // namespace wta
