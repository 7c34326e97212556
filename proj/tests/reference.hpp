#pragma once

// Test-side oracles. Everything here is deliberately naive and shares no code
// with the library beyond the data types, so it can judge the library.

#include "fturn/grammar.hpp"
#include "fturn/pda.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#ifndef FTURN_TEST_DATA
#define FTURN_TEST_DATA "tests/data"
#endif

namespace ref {

using fturn::Grammar;
using fturn::PdaMachine;
using fturn::Production;
using fturn::Symbol;
using fturn::Word;

inline std::string read_file(const std::string& name) {
    std::ifstream in(std::string(FTURN_TEST_DATA) + "/" + name);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// All terminal words of length <= max_len derivable in g, by exhaustive
/// leftmost derivation over sentential forms no longer than max_len.
inline std::set<Word> derivable_words(const Grammar& g, std::size_t max_len) {
    std::set<Word> out;
    if (g.epsilon_stripped()) out.insert(Word{});
    using Form = std::vector<Symbol>;
    std::set<Form> seen;
    std::deque<Form> work;
    Form start{Symbol::var(g.start())};
    seen.insert(start);
    work.push_back(start);
    while (!work.empty()) {
        Form f = work.front();
        work.pop_front();
        auto it = std::find_if(f.begin(), f.end(), [](Symbol s) { return !s.terminal; });
        if (it == f.end()) {
            Word w;
            for (Symbol s : f) w.push_back(g.terminals()[s.index]);
            out.insert(w);
            continue;
        }
        const std::size_t pos = static_cast<std::size_t>(it - f.begin());
        for (int pi : g.productions_by_head()[it->index]) {
            const auto& body = g.productions()[pi].body;
            Form n(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(pos));
            n.insert(n.end(), body.begin(), body.end());
            n.insert(n.end(), f.begin() + static_cast<std::ptrdiff_t>(pos) + 1, f.end());
            if (n.size() > max_len) continue;
            if (seen.insert(n).second) work.push_back(std::move(n));
        }
    }
    return out;
}

/// Number of turns of a height profile: every switch from going up to going
/// down, ignoring flat steps.
inline int reference_turns(const std::vector<int>& heights) {
    int turns = 0;
    int dir = 0;
    for (std::size_t i = 1; i < heights.size(); ++i) {
        int d = heights[i] > heights[i - 1] ? 1 : heights[i] < heights[i - 1] ? -1 : 0;
        if (d == 0) continue;
        if (dir == 1 && d == -1) ++turns;
        dir = d;
    }
    return turns;
}

struct BruteResult {
    bool accepted = false;
    int min_turns = -1;
};

/// Breadth-first search over explicit configurations with the stack height
/// capped at max_height; the direction of the last height change is part of
/// the node so that the fewest turns can be found with a 0-1 search.
inline BruteResult brute_pda(const PdaMachine& m, const Word& w, int max_height) {
    std::vector<int> in;
    for (const auto& s : w) {
        auto x = m.find_input(s);
        if (!x) return {};
        in.push_back(*x);
    }
    using Node = std::tuple<int, std::size_t, std::vector<int>, int>;  // state, pos, stack, last dir
    std::map<Node, int> best;
    std::deque<std::pair<Node, int>> dq;
    Node s0{m.start(), 0, {m.bottom()}, 0};
    best[s0] = 0;
    dq.push_back({s0, 0});
    BruteResult r;
    while (!dq.empty()) {
        auto [node, cost] = dq.front();
        dq.pop_front();
        if (best[node] < cost) continue;
        const auto& [q, pos, stack, dir] = node;
        if (pos == in.size() && stack.size() == 1 && m.is_accepting(q)) {
            if (!r.accepted || cost < r.min_turns) r = {true, cost};
            continue;
        }
        for (int ti : m.outgoing()[q]) {
            const auto& t = m.transitions()[ti];
            if (t.top != stack.back()) continue;
            std::size_t np = pos;
            if (t.read >= 0) {
                if (pos >= in.size() || in[pos] != t.read) continue;
                ++np;
            }
            std::vector<int> ns = stack;
            int nd = dir, add = 0;
            if (t.action == fturn::StackAction::push) {
                if (static_cast<int>(ns.size()) >= max_height) continue;
                ns.push_back(t.pushed);
                nd = 1;
            } else if (t.action == fturn::StackAction::pop) {
                ns.pop_back();
                if (dir == 1) add = 1;
                nd = -1;
            }
            Node n{t.to, np, ns, nd};
            const int c = cost + add;
            auto it = best.find(n);
            if (it != best.end() && it->second <= c) continue;
            best[n] = c;
            if (add) dq.push_back({n, c});
            else dq.push_front({n, c});
        }
    }
    return r;
}

/// Self-embedding contexts: for each variable A, the pairs (u, v) with
/// A =>+ u A v found by expanding any variable, forms capped at max_len
/// symbols and derivations at max_depth steps.
inline std::map<int, std::set<std::pair<Word, Word>>> self_embeddings(const Grammar& g, std::size_t max_len,
                                                                       int max_depth) {
    std::map<int, std::set<std::pair<Word, Word>>> out;
    using Form = std::vector<Symbol>;
    for (int a = 0; a < g.variable_count(); ++a) {
        std::set<Form> seen;
        std::vector<Form> layer{{Symbol::var(a)}};
        for (int depth = 1; depth <= max_depth && !layer.empty(); ++depth) {
            std::vector<Form> next;
            for (const Form& f : layer)
                for (std::size_t pos = 0; pos < f.size(); ++pos) {
                    if (f[pos].terminal) continue;
                    for (int pi : g.productions_by_head()[f[pos].index]) {
                        const auto& body = g.productions()[pi].body;
                        Form n(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(pos));
                        n.insert(n.end(), body.begin(), body.end());
                        n.insert(n.end(), f.begin() + static_cast<std::ptrdiff_t>(pos) + 1, f.end());
                        if (n.size() > max_len || !seen.insert(n).second) continue;
                        int vars = 0, where = -1;
                        for (std::size_t k = 0; k < n.size(); ++k)
                            if (!n[k].terminal) ++vars, where = static_cast<int>(k);
                        if (vars == 1 && n[where].index == a) {
                            Word u, v;
                            for (int k = 0; k < where; ++k) u.push_back(g.terminals()[n[k].index]);
                            for (std::size_t k = where + 1; k < n.size(); ++k) v.push_back(g.terminals()[n[k].index]);
                            out[a].insert({u, v});
                        }
                        next.push_back(std::move(n));
                    }
                }
            layer = std::move(next);
        }
    }
    return out;
}

/// Grammar over a1..am in which every variable owns a letter interval
/// [lo, hi] and only derives sorted words over it.
inline Grammar random_letter_bounded_grammar(std::mt19937& rng, int m, int vars, int extra_prods) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::vector<std::string> names, terms;
    for (int i = 0; i < m; ++i) terms.push_back("a" + std::to_string(i + 1));
    std::vector<std::pair<int, int>> span;
    for (int v = 0; v < vars; ++v) {
        names.push_back(v == 0 ? "S" : "X" + std::to_string(v));
        if (v == 0) {
            span.push_back({0, m - 1});
        } else {
            int lo = pick(0, m - 1);
            span.push_back({lo, pick(lo, m - 1)});
        }
    }
    std::vector<Production> prods;
    for (int v = 0; v < vars; ++v) prods.push_back({v, {Symbol::term(span[v].first)}});
    auto with_span = [&](int lo, int hi) {
        std::vector<int> c;
        for (int v = 0; v < vars; ++v)
            if (span[v].first >= lo && span[v].second <= hi) c.push_back(v);
        return c;
    };
    for (int k = 0; k < extra_prods; ++k) {
        const int x = pick(0, vars - 1);
        const auto [lo, hi] = span[x];
        std::vector<Symbol> body;
        switch (pick(0, 5)) {
        case 0: body = {Symbol::term(lo), Symbol::var(x)}; break;
        case 1: body = {Symbol::var(x), Symbol::term(hi)}; break;
        case 2: body = {Symbol::term(lo), Symbol::var(x), Symbol::term(hi)}; break;
        case 3: {
            const int mid = pick(lo, hi);
            auto l = with_span(lo, mid), r = with_span(mid, hi);
            if (l.empty() || r.empty()) continue;
            body = {Symbol::var(l[pick(0, int(l.size()) - 1)]), Symbol::var(r[pick(0, int(r.size()) - 1)])};
            break;
        }
        case 4: body = {Symbol::term(pick(lo, hi))}; break;
        default: {
            auto inner = with_span(lo, hi);
            body = {Symbol::term(lo), Symbol::var(inner[pick(0, int(inner.size()) - 1)]), Symbol::term(hi)};
            break;
        }
        }
        prods.push_back({x, body});
    }
    std::sort(prods.begin(), prods.end(), [](const Production& a, const Production& b) {
        return std::tie(a.head, a.body) < std::tie(b.head, b.body);
    });
    prods.erase(std::unique(prods.begin(), prods.end()), prods.end());
    return Grammar(names, terms, 0, prods);
}

/// Unrestricted small grammar over {a, b} with bodies of length 1 to max_body.
inline Grammar random_grammar(std::mt19937& rng, int vars, int prods, int max_body) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::vector<std::string> names;
    for (int v = 0; v < vars; ++v) names.push_back(v == 0 ? "S" : "V" + std::to_string(v));
    std::vector<Production> out;
    for (int v = 0; v < vars; ++v) out.push_back({v, {Symbol::term(pick(0, 1))}});
    for (int k = 0; k < prods; ++k) {
        Production p{pick(0, vars - 1), {}};
        const int len = pick(1, max_body);
        for (int i = 0; i < len; ++i)
            p.body.push_back(pick(0, 2) == 0 ? Symbol::term(pick(0, 1)) : Symbol::var(pick(0, vars - 1)));
        if (p.body.size() == 1 && !p.body[0].terminal && p.body[0].index == p.head) continue;
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return Grammar(names, {"a", "b"}, 0, out);
}

/// Random normal-form PDA over {a, b} with stack symbols Z0, A, B.
inline PdaMachine random_pda(std::mt19937& rng, int states, int transitions) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::vector<std::string> names;
    for (int q = 0; q < states; ++q) names.push_back("q" + std::to_string(q));
    std::vector<fturn::PdaTransition> ts;
    for (int k = 0; k < transitions; ++k) {
        fturn::PdaTransition t;
        t.from = pick(0, states - 1);
        t.to = pick(0, states - 1);
        switch (pick(0, 2)) {
        case 0:
            t.action = fturn::StackAction::stay;
            t.read = pick(-1, 1);
            t.top = pick(0, 2);
            break;
        case 1:
            t.action = fturn::StackAction::push;
            t.top = pick(0, 2);
            t.pushed = pick(1, 2);
            break;
        default:
            t.action = fturn::StackAction::pop;
            t.top = pick(1, 2);
            break;
        }
        if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
    }
    std::vector<int> acc{pick(0, states - 1)};
    return PdaMachine(names, {"a", "b"}, {"Z0", "A", "B"}, 0, 0, acc, ts);
}

/// Unary machine running up to j mountains one after the other. A mountain
/// reads one `a` on entry, one per push and one per pop, so a mountain of
/// height p consumes 2p+1 letters. An accepting run has one turn per mountain;
/// the machine declares j turns.
inline std::string mountain_pda_text(int j) {
    std::vector<std::string> states{"b0"};
    std::ostringstream moves;
    std::string prev = "b0";
    for (int c = 1; c <= j; ++c) {
        const std::string n = std::to_string(c);
        const std::string up = "u" + n, pushing = "p" + n, down = "d" + n, popping = "e" + n;
        states.insert(states.end(), {up, pushing, down, popping});
        moves << prev << " a Z0 -> " << up << " stay\n";
        for (const char* z : {"Z0", "X"}) {
            moves << up << " a " << z << " -> " << pushing << " stay\n";
            moves << pushing << " eps " << z << " -> " << up << " push X\n";
        }
        moves << up << " eps X -> " << down << " stay\n";
        moves << down << " a X -> " << popping << " stay\n";
        moves << popping << " eps X -> " << down << " pop\n";
        prev = down;
    }
    std::ostringstream t;
    t << "states:";
    for (const auto& q : states) t << ' ' << q;
    t << "\ninput: a\nstack: Z0 X\nbottom: Z0\nstart: b0\naccept: b0";
    for (int c = 1; c <= j; ++c) t << " d" << c;
    t << "\nturns: " << j << "\n" << moves.str();
    return t.str();
}

} // namespace ref
