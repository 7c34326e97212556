#include "fturn/grammar_transform.hpp"

#include "fturn/error.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

namespace fturn {

namespace {

std::vector<char> productive_variables(const Grammar& g) {
    std::vector<char> productive(g.variable_count(), 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : g.productions()) {
            if (productive[p.head]) continue;
            bool ok = std::all_of(p.body.begin(), p.body.end(),
                                  [&](Symbol s) { return s.terminal || productive[s.index]; });
            if (ok) productive[p.head] = 1, changed = true;
        }
    }
    return productive;
}

/// Keeps productions over useful variables only. The start symbol always
/// survives, possibly without productions.
Grammar restrict_to_useful(const Grammar& g) {
    const auto productive = productive_variables(g);
    auto usable = [&](const Production& p) {
        return productive[p.head] && std::all_of(p.body.begin(), p.body.end(), [&](Symbol s) {
                   return s.terminal || productive[s.index];
               });
    };
    std::vector<char> reachable(g.variable_count(), 0);
    std::vector<int> work{g.start()};
    reachable[g.start()] = 1;
    while (!work.empty()) {
        int a = work.back();
        work.pop_back();
        for (int pi : g.productions_by_head()[a]) {
            const auto& p = g.productions()[pi];
            if (!usable(p)) continue;
            for (Symbol s : p.body)
                if (!s.terminal && !reachable[s.index]) reachable[s.index] = 1, work.push_back(s.index);
        }
    }
    std::vector<int> remap(g.variable_count(), -1);
    std::vector<std::string> names;
    for (int v = 0; v < g.variable_count(); ++v) {
        if ((reachable[v] && productive[v]) || v == g.start()) {
            remap[v] = static_cast<int>(names.size());
            names.push_back(g.variables()[v]);
        }
    }
    std::vector<Production> prods;
    for (const auto& p : g.productions()) {
        if (remap[p.head] < 0 || !reachable[p.head] || !usable(p)) continue;
        Production q{remap[p.head], p.body};
        for (auto& s : q.body)
            if (!s.terminal) s.index = remap[s.index];
        prods.push_back(std::move(q));
    }
    return Grammar(names, g.terminals(), remap[g.start()], std::move(prods), g.epsilon_stripped());
}

std::unordered_map<std::string, int> taken_names(const Grammar& g) {
    std::unordered_map<std::string, int> taken;
    for (int i = 0; i < g.variable_count(); ++i) taken[g.variables()[i]] = i;
    for (int i = 0; i < g.terminal_count(); ++i) taken[g.terminals()[i]] = -1 - i;
    return taken;
}

std::string fresh(const std::string& base, std::unordered_map<std::string, int>& taken) {
    std::string name = base;
    for (int k = 2; taken.count(name); ++k) name = base + "_" + std::to_string(k);
    taken[name] = 0;
    return name;
}

} // namespace

Grammar remove_useless(const Grammar& g) {
    if (!productive_variables(g)[g.start()])
        throw EmptyLanguageError("start symbol '" + g.start_name() + "' derives no terminal string");
    return restrict_to_useful(g);
}

Grammar binarize(const Grammar& g) {
    auto taken = taken_names(g);
    std::vector<std::string> names = g.variables();
    std::vector<Production> prods;
    for (const auto& p : g.productions()) {
        if (p.body.size() <= 2) {
            prods.push_back(p);
            continue;
        }
        const std::size_t n = p.body.size();
        int head = p.head;
        for (std::size_t i = 0; i + 2 < n; ++i) {
            int d = static_cast<int>(names.size());
            names.push_back(fresh(g.variables()[p.head] + "_D" + std::to_string(i + 1), taken));
            prods.push_back({head, {p.body[i], Symbol::var(d)}});
            head = d;
        }
        prods.push_back({head, {p.body[n - 2], p.body[n - 1]}});
    }
    return Grammar(std::move(names), g.terminals(), g.start(), std::move(prods), g.epsilon_stripped());
}

Grammar eliminate_unit_productions(const Grammar& g) {
    const int nv = g.variable_count();
    std::vector<Production> prods;
    for (int a = 0; a < nv; ++a) {
        std::vector<int> order{a};
        std::vector<char> seen(nv, 0);
        seen[a] = 1;
        for (std::size_t k = 0; k < order.size(); ++k) {
            for (int pi : g.productions_by_head()[order[k]]) {
                const auto& p = g.productions()[pi];
                if (p.body.size() == 1 && !p.body[0].terminal) {
                    int b = p.body[0].index;
                    if (!seen[b]) seen[b] = 1, order.push_back(b);
                } else {
                    prods.push_back({a, p.body});
                }
            }
        }
    }
    return Grammar(g.variables(), g.terminals(), g.start(), std::move(prods), g.epsilon_stripped());
}

Grammar to_cnf(const Grammar& input) {
    Grammar g = restrict_to_useful(eliminate_unit_productions(input));
    auto taken = taken_names(g);
    std::vector<std::string> names = g.variables();
    std::map<int, int> lifted;  // terminal -> variable T_a
    std::vector<Production> prods;
    std::vector<Production> lifted_prods;
    for (const auto& p : g.productions()) {
        Production q = p;
        if (q.body.size() >= 2) {
            for (auto& s : q.body) {
                if (!s.terminal) continue;
                auto it = lifted.find(s.index);
                if (it == lifted.end()) {
                    int v = static_cast<int>(names.size());
                    names.push_back(fresh("T_" + g.terminals()[s.index], taken));
                    it = lifted.emplace(s.index, v).first;
                    lifted_prods.push_back({v, {s}});
                }
                s = Symbol::var(it->second);
            }
        }
        prods.push_back(std::move(q));
    }
    prods.insert(prods.end(), lifted_prods.begin(), lifted_prods.end());
    Grammar lifted_grammar(std::move(names), g.terminals(), g.start(), std::move(prods), g.epsilon_stripped());
    return restrict_to_useful(binarize(lifted_grammar));
}

// ---------------------------------------------------------------------------

std::vector<int> letter_positions(const Grammar& g, const AlphabetOrder& order) {
    std::vector<int> pos(g.terminal_count(), -1);
    for (int t = 0; t < g.terminal_count(); ++t) {
        auto it = std::find(order.begin(), order.end(), g.terminals()[t]);
        if (it == order.end())
            throw PreconditionError("terminal '" + g.terminals()[t] + "' is not in the alphabet order");
        pos[t] = static_cast<int>(it - order.begin());
    }
    return pos;
}

BorderTable compute_borders(const Grammar& g, const AlphabetOrder& order) {
    if (order.size() > 64) throw PreconditionError("alphabet order longer than 64 letters");
    const auto letter = letter_positions(g, order);
    const int nv = g.variable_count();
    using Mask = std::uint64_t;

    // Letters occurring in some terminal string derivable from each variable.
    std::vector<Mask> gen(nv, 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : g.productions()) {
            Mask m = gen[p.head];
            for (Symbol s : p.body) m |= s.terminal ? Mask(1) << letter[s.index] : gen[s.index];
            if (m != gen[p.head]) gen[p.head] = m, changed = true;
        }
    }
    auto letters_of = [&](const std::vector<Symbol>& body, std::size_t from, std::size_t to) {
        Mask m = 0;
        for (std::size_t i = from; i < to; ++i)
            m |= body[i].terminal ? Mask(1) << letter[body[i].index] : gen[body[i].index];
        return m;
    };

    // reach[b][a]: b =>+ u a v; left/right collect the letters of u and v.
    std::vector<std::vector<char>> reach(nv, std::vector<char>(nv, 0));
    std::vector<std::vector<Mask>> left(nv, std::vector<Mask>(nv, 0)), right = left;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : g.productions()) {
            const int b = p.head;
            for (std::size_t i = 0; i < p.body.size(); ++i) {
                if (p.body[i].terminal) continue;
                const int c = p.body[i].index;
                const Mask lm = letters_of(p.body, 0, i), rm = letters_of(p.body, i + 1, p.body.size());
                auto merge = [&](int a, Mask l, Mask r) {
                    if (!reach[b][a] || (left[b][a] | l) != left[b][a] || (right[b][a] | r) != right[b][a]) {
                        reach[b][a] = 1;
                        left[b][a] |= l;
                        right[b][a] |= r;
                        changed = true;
                    }
                };
                merge(c, lm, rm);
                for (int a = 0; a < nv; ++a)
                    if (reach[c][a]) merge(a, lm | left[c][a], rm | right[c][a]);
            }
        }
    }

    BorderTable table(nv);
    for (int a = 0; a < nv; ++a) {
        if (!reach[a][a]) continue;
        const Mask l = left[a][a], r = right[a][a];
        if (__builtin_popcountll(l) > 1 || __builtin_popcountll(r) > 1)
            throw PreconditionError("variable '" + g.variables()[a] +
                                    "' has self-embedding contexts over more than one letter; "
                                    "the grammar is not letter-bounded");
        if (l && r) table[a] = Border{__builtin_ctzll(l) + 1, __builtin_ctzll(r) + 1};
        else if (l) table[a] = Border{__builtin_ctzll(l) + 1, __builtin_ctzll(l) + 1};
        else if (r) table[a] = Border{__builtin_ctzll(r) + 1, __builtin_ctzll(r) + 1};
    }
    return table;
}

std::strong_ordering compare_borders(Border x, Border y) {
    if (x.left != y.left) return x.left <=> y.left;
    return y.right <=> x.right;
}

// ---------------------------------------------------------------------------

namespace {

/// Complete DFA over the terminals of a grammar.
struct TerminalDfa {
    int start = 0;
    std::vector<std::vector<int>> delta;  // state x terminal -> state
    std::vector<char> accepting;
    int size() const { return static_cast<int>(delta.size()); }
};

/// Shortest word of L(g) driving the DFA into a rejecting state.
std::optional<Word> shortest_rejected_word(const Grammar& input, const TerminalDfa& dfa) {
    const Grammar g = binarize(input);
    const int nv = g.variable_count(), nd = dfa.size();
    auto key = [&](int a, int p, int q) { return (static_cast<std::size_t>(a) * nd + p) * nd + q; };
    const std::size_t total = static_cast<std::size_t>(nv) * nd * nd;
    constexpr long long inf = -1;
    std::vector<long long> best(total, inf);
    std::vector<char> done(total, 0);
    struct Choice {
        int production = -1;
        int mid = -1;  // DFA state between the two body symbols
    };
    std::vector<Choice> choice(total);
    using Item = std::pair<long long, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    auto offer = [&](int a, int p, int q, long long d, Choice c) {
        std::size_t k = key(a, p, q);
        if (done[k] || (best[k] != inf && best[k] <= d)) return;
        best[k] = d;
        choice[k] = c;
        heap.push({d, k});
    };
    // Occurrences of each variable in bodies: (production, position).
    std::vector<std::vector<std::pair<int, int>>> occurs(nv);
    for (int pi = 0; pi < static_cast<int>(g.productions().size()); ++pi) {
        const auto& p = g.productions()[pi];
        for (int i = 0; i < static_cast<int>(p.body.size()); ++i)
            if (!p.body[i].terminal) occurs[p.body[i].index].push_back({pi, i});
        bool all_terminal = std::all_of(p.body.begin(), p.body.end(), [](Symbol s) { return s.terminal; });
        if (!all_terminal) continue;
        for (int s = 0; s < nd; ++s) {
            int mid = dfa.delta[s][p.body[0].index];
            int end = p.body.size() == 2 ? dfa.delta[mid][p.body[1].index] : mid;
            offer(p.head, s, end, static_cast<long long>(p.body.size()), {pi, mid});
        }
    }
    // Distance of a finished entry, or inf.
    auto fin = [&](int a, int p, int q) -> long long {
        std::size_t k = key(a, p, q);
        return done[k] ? best[k] : inf;
    };
    while (!heap.empty()) {
        auto [d, k] = heap.top();
        heap.pop();
        if (done[k] || best[k] != d) continue;
        done[k] = 1;
        const int x = static_cast<int>(k / (static_cast<std::size_t>(nd) * nd));
        const int p = static_cast<int>(k / nd % nd), q = static_cast<int>(k % nd);
        for (auto [pi, pos] : occurs[x]) {
            const auto& pr = g.productions()[pi];
            if (pr.body.size() == 1) {
                offer(pr.head, p, q, d, {pi, -1});
                continue;
            }
            const Symbol other = pr.body[1 - pos];
            if (pos == 0) {
                if (other.terminal) {
                    offer(pr.head, p, dfa.delta[q][other.index], d + 1, {pi, q});
                } else {
                    for (int r = 0; r < nd; ++r)
                        if (long long e = fin(other.index, q, r); e != inf) offer(pr.head, p, r, d + e, {pi, q});
                }
            } else {
                if (other.terminal) {
                    for (int r = 0; r < nd; ++r)
                        if (dfa.delta[r][other.index] == p) offer(pr.head, r, q, d + 1, {pi, p});
                } else {
                    for (int r = 0; r < nd; ++r)
                        if (long long e = fin(other.index, r, p); e != inf) offer(pr.head, r, q, d + e, {pi, p});
                }
            }
        }
    }
    int best_q = -1;
    for (int q = 0; q < nd; ++q) {
        if (dfa.accepting[q]) continue;
        long long d = fin(g.start(), dfa.start, q);
        if (d != inf && (best_q < 0 || d < fin(g.start(), dfa.start, best_q))) best_q = q;
    }
    if (best_q < 0) return std::nullopt;

    Word out;
    auto emit = [&](auto&& self, Symbol s, int p, int q) -> void {
        if (s.terminal) {
            out.push_back(g.terminals()[s.index]);
            return;
        }
        const Choice c = choice[key(s.index, p, q)];
        const auto& pr = g.productions()[c.production];
        if (pr.body.size() == 1) {
            self(self, pr.body[0], p, q);
            return;
        }
        self(self, pr.body[0], p, c.mid);
        self(self, pr.body[1], c.mid, q);
    };
    emit(emit, Symbol::var(g.start()), dfa.start, best_q);
    return out;
}

} // namespace

std::optional<Word> check_letter_bounded(const Grammar& g, const AlphabetOrder& order) {
    const int m = static_cast<int>(order.size());
    TerminalDfa dfa;
    const int dead = m;
    dfa.delta.assign(m + 1, std::vector<int>(g.terminal_count(), dead));
    dfa.accepting.assign(m + 1, 1);
    dfa.accepting[dead] = 0;
    for (int t = 0; t < g.terminal_count(); ++t) {
        auto it = std::find(order.begin(), order.end(), g.terminals()[t]);
        if (it == order.end()) continue;
        const int j = static_cast<int>(it - order.begin());
        for (int i = 0; i <= j && i < m; ++i) dfa.delta[i][t] = j;
    }
    return shortest_rejected_word(g, dfa);
}

std::optional<Word> check_word_bounded(const Grammar& g, const std::vector<Word>& words) {
    // NFA positions: (i, k) means "inside w_i after k letters"; (i, 0) is the
    // boundary before another copy of w_i (or any later word).
    std::vector<std::pair<int, int>> positions;
    std::map<std::pair<int, int>, int> id;
    for (int i = 0; i < static_cast<int>(words.size()); ++i)
        for (int k = 0; k < static_cast<int>(words[i].size()); ++k) {
            id[{i, k}] = static_cast<int>(positions.size());
            positions.push_back({i, k});
        }
    auto step = [&](const std::set<int>& from, const std::string& letter) {
        std::set<int> to;
        for (int s : from) {
            auto [i, k] = positions[s];
            std::vector<int> starts;
            if (k == 0) {
                for (int i2 = i; i2 < static_cast<int>(words.size()); ++i2) starts.push_back(i2);
            } else {
                starts.push_back(-1);
            }
            for (int i2 : starts) {
                const int wi = i2 < 0 ? i : i2;
                const int wk = i2 < 0 ? k : 0;
                if (words[wi][wk] != letter) continue;
                int nk = wk + 1;
                to.insert(nk == static_cast<int>(words[wi].size()) ? id[{wi, 0}] : id[{wi, nk}]);
            }
        }
        return to;
    };
    TerminalDfa dfa;
    std::map<std::set<int>, int> subset_id;
    std::vector<std::set<int>> subsets;
    for (const auto& w : words)
        if (w.empty()) throw PreconditionError("bounding words must be nonempty");
    // Before the first letter the position is the boundary in front of w_1.
    std::set<int> init = words.empty() ? std::set<int>{} : std::set<int>{id[{0, 0}]};
    subset_id[init] = 0;
    subsets.push_back(init);
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        dfa.delta.emplace_back(g.terminal_count(), 0);
        for (int t = 0; t < g.terminal_count(); ++t) {
            std::set<int> next = step(subsets[s], g.terminals()[t]);
            auto [it, fresh] = subset_id.emplace(next, static_cast<int>(subsets.size()));
            if (fresh) subsets.push_back(next);
            dfa.delta[s][t] = it->second;
        }
    }
    for (const auto& sub : subsets) {
        bool acc = false;
        for (int s : sub) acc = acc || positions[s].second == 0;
        dfa.accepting.push_back(acc);
    }
    return shortest_rejected_word(g, dfa);
}

} // namespace fturn

namespace fturn {

Grammar merge_equivalent_variables(const Grammar& g) {
    const int nv = g.variable_count();
    std::vector<int> cls(nv, 0);
    int classes = 1;
    for (;;) {
        std::map<std::pair<int, std::set<std::vector<std::int64_t>>>, int> ids;
        std::vector<int> next(nv);
        for (int v = 0; v < nv; ++v) {
            std::set<std::vector<std::int64_t>> sig;
            for (int pi : g.productions_by_head()[v]) {
                std::vector<std::int64_t> body;
                for (Symbol s : g.productions()[pi].body) body.push_back(s.terminal ? -1 - s.index : cls[s.index]);
                sig.insert(std::move(body));
            }
            auto [it, fresh_class] = ids.emplace(std::make_pair(cls[v], std::move(sig)), static_cast<int>(ids.size()));
            next[v] = it->second;
        }
        const int count = static_cast<int>(ids.size());
        cls = std::move(next);
        if (count == classes) break;
        classes = count;
    }
    std::vector<int> remap(classes, -1);
    std::vector<std::string> names;
    for (int v = 0; v < nv; ++v)
        if (remap[cls[v]] < 0) remap[cls[v]] = static_cast<int>(names.size()), names.push_back(g.variables()[v]);
    std::vector<Production> prods;
    std::set<std::pair<int, std::vector<Symbol>>> seen;
    for (const auto& p : g.productions()) {
        Production q{remap[cls[p.head]], p.body};
        for (auto& s : q.body)
            if (!s.terminal) s.index = remap[cls[s.index]];
        if (seen.emplace(q.head, q.body).second) prods.push_back(std::move(q));
    }
    return Grammar(std::move(names), g.terminals(), remap[cls[g.start()]], std::move(prods), g.epsilon_stripped());
}

} // namespace fturn
