#include "fturn/oracle.hpp"

#include "fturn/error.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <tuple>
#include <queue>
#include <unordered_map>

namespace fturn {

// ---------------------------------------------------------------------------
// CYK

bool cyk_membership(const Grammar& g, const Word& w) {
    for (const auto& p : g.productions()) {
        bool ok = (p.body.size() == 1 && p.body[0].terminal) ||
                  (p.body.size() == 2 && !p.body[0].terminal && !p.body[1].terminal);
        if (!ok) {
            std::string text = g.variables()[p.head] + " ->";
            for (Symbol s : p.body) text += " " + g.name(s);
            throw PreconditionError("grammar is not in Chomsky normal form: '" + text + "'");
        }
    }
    if (w.empty()) throw PreconditionError("CYK membership needs a nonempty word");
    const std::size_t n = w.size();
    const int nv = g.variable_count();
    const std::size_t words = (nv + 63) / 64;
    // cell(i, len) holds the variables deriving w[i .. i+len).
    std::vector<std::uint64_t> table(n * (n + 1) * words, 0);
    auto cell = [&](std::size_t i, std::size_t len) { return table.data() + (i * (n + 1) + len) * words; };
    auto has = [](const std::uint64_t* c, int v) { return (c[v / 64] >> (v % 64)) & 1; };
    for (std::size_t i = 0; i < n; ++i) {
        auto t = g.find_terminal(w[i]);
        if (!t) return false;
        for (const auto& p : g.productions())
            if (p.body.size() == 1 && p.body[0].index == *t) cell(i, 1)[p.head / 64] |= std::uint64_t(1) << (p.head % 64);
    }
    for (std::size_t len = 2; len <= n; ++len)
        for (std::size_t i = 0; i + len <= n; ++i) {
            auto* target = cell(i, len);
            for (std::size_t k = 1; k < len; ++k) {
                const auto* left = cell(i, k);
                const auto* right = cell(i + k, len - k);
                for (const auto& p : g.productions())
                    if (p.body.size() == 2 && has(left, p.body[0].index) && has(right, p.body[1].index))
                        target[p.head / 64] |= std::uint64_t(1) << (p.head % 64);
            }
        }
    return has(cell(0, n), g.start());
}

// ---------------------------------------------------------------------------
// Traces

std::vector<int> ComputationTrace::heights() const {
    std::vector<int> h;
    h.reserve(configurations.size());
    for (const auto& c : configurations) h.push_back(static_cast<int>(c.stack.size()));
    return h;
}

int ComputationTrace::turns() const { return count_turns(heights()); }

int count_turns(const std::vector<int>& heights) {
    std::vector<int> merged;
    for (int h : heights)
        if (merged.empty() || merged.back() != h) merged.push_back(h);
    int turns = 0;
    for (std::size_t i = 1; i + 1 < merged.size(); ++i)
        if (merged[i] > merged[i - 1] && merged[i] > merged[i + 1]) ++turns;
    return turns;
}

namespace {

std::optional<std::vector<int>> encode(const PdaMachine& m, const Word& w) {
    std::vector<int> out;
    for (const auto& s : w) {
        auto a = m.find_input(s);
        if (!a) return std::nullopt;
        out.push_back(*a);
    }
    return out;
}

// Applies transition t to c; false when it does not apply.
bool apply(const PdaMachine& m, const std::vector<int>& input, const PdaTransition& t, Configuration& c) {
    if (c.state != t.from || c.stack.empty() || c.stack.back() != t.top) return false;
    if (t.read >= 0) {
        if (c.position >= input.size() || input[c.position] != t.read) return false;
        ++c.position;
    }
    switch (t.action) {
    case StackAction::stay: break;
    case StackAction::pop:
        if (c.stack.size() == 1) return false;
        c.stack.pop_back();
        break;
    case StackAction::push: c.stack.push_back(t.pushed); break;
    }
    (void)m;
    c.state = t.to;
    return true;
}

} // namespace

bool replay_trace(const PdaMachine& m, const Word& w, const ComputationTrace& trace) {
    auto input = encode(m, w);
    if (!input || trace.configurations.empty()) return false;
    if (trace.configurations.size() != trace.transitions.size() + 1) return false;
    Configuration cur{m.start(), 0, {m.bottom()}};
    if (!(trace.configurations[0] == cur)) return false;
    for (std::size_t k = 0; k < trace.transitions.size(); ++k) {
        int ti = trace.transitions[k];
        if (ti < 0 || ti >= static_cast<int>(m.transitions().size())) return false;
        if (!apply(m, *input, m.transitions()[ti], cur)) return false;
        if (!(trace.configurations[k + 1] == cur)) return false;
    }
    return m.is_accepting(cur.state) && cur.position == input->size() && cur.stack.size() == 1;
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::accepted: return "accepted";
    case Verdict::rejected: return "rejected";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "";
}

// ---------------------------------------------------------------------------
// Saturation search

namespace {

class SummarySearch {
public:
    SummarySearch(const PdaMachine& m, std::vector<int> input, const SearchCaps& caps)
        : m_(m), in_(std::move(input)), caps_(caps), n_(in_.size()) {}

    SearchResult run() {
        SearchResult res;
        int e0 = entry(m_.start(), m_.bottom(), 0);
        offer(e0, m_.start(), 0, 0, {Back::base});
        bool pruned = false;
        while (!queue_.empty()) {
            auto [cost, seq, f] = queue_.top();
            queue_.pop();
            (void)seq;
            Fact& fact = facts_[f];
            if (fact.settled || cost != fact.cost) continue;
            fact.settled = true;
            if (++res.work > caps_.max_steps) {
                res.verdict = Verdict::inconclusive;
                return res;
            }
            const int e = fact.entry;
            const int q = fact.state;
            const std::size_t j = fact.pos;
            if (e == e0 && m_.is_accepting(q) && j == n_) {
                res.verdict = Verdict::accepted;
                res.turns = static_cast<int>(cost);
                res.trace = trace(f);
                return res;
            }
            const int z = entries_[e].top;
            for (int ti : m_.outgoing()[q]) {
                const auto& t = m_.transitions()[ti];
                if (t.top != z) continue;
                if (t.action == StackAction::stay) {
                    if (t.read < 0) {
                        pruned |= !offer(e, t.to, j, cost, {Back::stay, f, ti});
                    } else if (j < n_ && in_[j] == t.read) {
                        pruned |= !offer(e, t.to, j + 1, cost, {Back::stay, f, ti});
                    }
                } else if (t.action == StackAction::push) {
                    int c = entry(t.to, t.pushed, j);
                    entries_[c].callers.push_back({f, ti});
                    if (entries_[c].callers.size() == 1) offer(c, t.to, j, 0, {Back::base});
                    // Copy: offer() does not touch exits, but keep iteration safe.
                    auto exits = entries_[c].exits;
                    for (auto [x, tp] : exits) pruned |= !close(f, ti, x, tp);
                } else {
                    entries_[e].exits.push_back({f, ti});
                    auto callers = entries_[e].callers;
                    for (auto [cf, tc] : callers) pruned |= !close(cf, tc, f, ti);
                }
            }
        }
        res.verdict = pruned ? Verdict::inconclusive : Verdict::rejected;
        return res;
    }

private:
    struct Back {
        enum Kind : char { base, stay, block } kind = base;
        int prev = -1;   // stay: previous fact; block: caller fact
        int trans = -1;  // stay: transition; block: push transition
        int inner = -1;  // block: exit fact of the pushed level
        int pop = -1;    // block: pop transition
    };
    struct Fact {
        int entry;
        int state;
        std::size_t pos;
        long long cost;
        bool settled = false;
        Back back;
    };
    struct Entry {
        int state, top;
        std::size_t pos;
        std::vector<std::pair<int, int>> callers;  // (fact, push transition)
        std::vector<std::pair<int, int>> exits;    // (fact, pop transition)
    };
    using Item = std::tuple<long long, std::uint64_t, int>;

    int entry(int q, int z, std::size_t pos) {
        std::uint64_t key = (static_cast<std::uint64_t>(q) * m_.stack_count() + z) * (n_ + 1) + pos;
        auto [it, fresh] = entry_index_.try_emplace(key, static_cast<int>(entries_.size()));
        if (fresh) entries_.push_back({q, z, pos, {}, {}});
        return it->second;
    }

    // Returns false when the fact was dropped because of the turn cap.
    bool offer(int e, int q, std::size_t pos, long long cost, Back back) {
        if (caps_.max_turns && cost > *caps_.max_turns) return false;
        std::uint64_t key = (static_cast<std::uint64_t>(e) * m_.state_count() + q) * (n_ + 1) + pos;
        auto it = fact_index_.find(key);
        if (it == fact_index_.end()) {
            int id = static_cast<int>(facts_.size());
            fact_index_.emplace(key, id);
            facts_.push_back({e, q, pos, cost, false, back});
            queue_.emplace(cost, seq_++, id);
            return true;
        }
        Fact& f = facts_[it->second];
        if (!f.settled && cost < f.cost) {
            f.cost = cost;
            f.back = back;
            queue_.emplace(cost, seq_++, it->second);
        }
        return true;
    }

    bool close(int caller, int push, int exit, int pop) {
        const Fact& cf = facts_[caller];
        const Fact& xf = facts_[exit];
        long long cost = cf.cost + std::max<long long>(1, xf.cost);
        return offer(cf.entry, m_.transitions()[pop].to, xf.pos, cost, {Back::block, caller, push, exit, pop});
    }

    ComputationTrace trace(int f) const {
        std::vector<int> order;
        std::vector<std::pair<bool, int>> todo{{true, f}};  // (is fact, id)
        while (!todo.empty()) {
            auto [is_fact, id] = todo.back();
            todo.pop_back();
            if (!is_fact) {
                order.push_back(id);
                continue;
            }
            const Back& b = facts_[id].back;
            if (b.kind == Back::stay) {
                todo.push_back({false, b.trans});
                todo.push_back({true, b.prev});
            } else if (b.kind == Back::block) {
                todo.push_back({false, b.pop});
                todo.push_back({true, b.inner});
                todo.push_back({false, b.trans});
                todo.push_back({true, b.prev});
            }
        }
        ComputationTrace tr;
        Configuration cur{m_.start(), 0, {m_.bottom()}};
        tr.configurations.push_back(cur);
        for (int ti : order) {
            apply(m_, in_, m_.transitions()[ti], cur);
            tr.configurations.push_back(cur);
            tr.transitions.push_back(ti);
        }
        return tr;
    }

    const PdaMachine& m_;
    std::vector<int> in_;
    SearchCaps caps_;
    std::size_t n_;
    std::vector<Entry> entries_;
    std::unordered_map<std::uint64_t, int> entry_index_;
    std::vector<Fact> facts_;
    std::unordered_map<std::uint64_t, int> fact_index_;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue_;
    std::uint64_t seq_ = 0;
};

} // namespace

SearchResult pda_accepts(const PdaMachine& m, const Word& w, const SearchCaps& caps) {
    auto input = encode(m, w);
    if (!input) return {};
    return SummarySearch(m, std::move(*input), caps).run();
}

SearchResult min_turns(const PdaMachine& m, const Word& w, const SearchCaps& caps) {
    return pda_accepts(m, w, caps);
}

// ---------------------------------------------------------------------------
// Membership and box comparison

MembershipOracle::MembershipOracle(const Grammar& g) {
    auto cnf = std::make_shared<Grammar>(to_cnf(g));
    const bool eps = g.epsilon_stripped();
    test_ = [cnf, eps](const Word& w) {
        if (w.empty()) return eps ? Verdict::accepted : Verdict::rejected;
        return cyk_membership(*cnf, w) ? Verdict::accepted : Verdict::rejected;
    };
}

MembershipOracle::MembershipOracle(const PdaMachine& m, SearchCaps caps) {
    auto machine = std::make_shared<PdaMachine>(m);
    test_ = [machine, caps](const Word& w) { return pda_accepts(*machine, w, caps).verdict; };
}

MembershipOracle::MembershipOracle(const NfaMachine& n) {
    auto machine = std::make_shared<NfaMachine>(n);
    test_ = [machine](const Word& w) { return nfa_accepts(*machine, w) ? Verdict::accepted : Verdict::rejected; };
}

std::vector<Word> box_words(const AlphabetOrder& order, int bound) {
    std::vector<Word> out;
    if (bound < 0) return out;
    const std::size_t m = order.size();
    std::vector<int> k(m, 0);
    while (true) {
        Word w;
        for (std::size_t i = 0; i < m; ++i) w.insert(w.end(), k[i], order[i]);
        out.push_back(std::move(w));
        std::size_t i = m;
        while (i > 0 && k[i - 1] == bound) k[--i] = 0;
        if (i == 0) break;
        ++k[i - 1];
    }
    return out;
}

std::vector<Word> all_words(const std::vector<std::string>& alphabet, int max_len) {
    std::vector<Word> out{{}};
    std::size_t begin = 0;
    for (int len = 1; len <= max_len && !alphabet.empty(); ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (const auto& a : alphabet) {
                Word w = out[i];
                w.push_back(a);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

EquivalenceResult compare_on(const MembershipOracle& x, const MembershipOracle& y, const std::vector<Word>& words) {
    EquivalenceResult res;
    for (const auto& w : words) {
        Verdict a = x(w), b = y(w);
        if (a == Verdict::inconclusive || b == Verdict::inconclusive)
            throw InconclusiveError(format_word(w), "membership of '" + format_word(w) + "' is inconclusive");
        ++res.words_checked;
        if (a != b) {
            res.equal = false;
            res.difference = w;
            res.in_first = a == Verdict::accepted;
            res.in_second = b == Verdict::accepted;
            return res;
        }
    }
    return res;
}

EquivalenceResult box_equivalence(const MembershipOracle& x, const MembershipOracle& y, const AlphabetOrder& order,
                                  int bound) {
    return compare_on(x, y, box_words(order, bound));
}

// ---------------------------------------------------------------------------
// Unary DFA size

int minimal_unary_dfa_size(const NfaMachine& n) {
    if (n.alphabet().size() != 1) throw PreconditionError("minimal_unary_dfa_size needs a one-letter alphabet");
    std::map<std::vector<int>, int> seen;
    std::vector<char> accepting;
    std::vector<int> cur = epsilon_closure(n, {n.start()});
    int tail = 0, period = 0;
    while (true) {
        auto [it, fresh] = seen.emplace(cur, static_cast<int>(accepting.size()));
        if (!fresh) {
            tail = it->second;
            period = static_cast<int>(accepting.size()) - tail;
            break;
        }
        accepting.push_back(std::any_of(cur.begin(), cur.end(), [&](int q) { return n.is_accepting(q); }));
        std::vector<int> next;
        for (int q : cur)
            for (int ti : n.outgoing()[q])
                if (n.transitions()[ti].symbol == 0) next.push_back(n.transitions()[ti].to);
        cur = epsilon_closure(n, std::move(next));
    }
    auto at = [&](long long t) {
        return t < tail ? accepting[t] : accepting[tail + (t - tail) % period];
    };
    int best = period;
    for (int d = 1; d < period; ++d) {
        if (period % d) continue;
        bool ok = true;
        for (int i = 0; i < period && ok; ++i) ok = at(tail + i) == at(tail + (i + d) % period);
        if (ok) {
            best = d;
            break;
        }
    }
    int t0 = tail;
    while (t0 > 0 && at(t0 - 1) == at(t0 - 1 + best)) --t0;
    return t0 + best;
}

// ---------------------------------------------------------------------------
// Witnesses

Grammar witness_ln(int n) {
    if (n < 1) throw PreconditionError("witness_ln needs n >= 1");
    GrammarBuilder b;
    int a = b.terminal("a");
    std::vector<int> v{b.variable("S")};
    for (int i = 1; i <= n; ++i) v.push_back(b.variable("A" + std::to_string(i)));
    b.set_start(v[0]);
    for (int i = 0; i < n; ++i) b.add(v[i], {Symbol::var(v[i + 1]), Symbol::var(v[i + 1])});
    b.add(v[n], {Symbol::term(a)});
    return b.finish();
}

Grammar witness_tilde_ln(int n, int m) {
    if (n < 1 || m < 2) throw PreconditionError("witness_tilde_ln needs n >= 1 and m >= 2");
    GrammarBuilder b;
    std::vector<int> letter(m + 1);
    for (int i = 1; i <= m; ++i) letter[i] = b.terminal("a" + std::to_string(i));
    int s = b.variable("S");
    b.set_start(s);
    // A_0..A_{n-1}; A_n is shared with D_1.
    std::vector<int> av;
    for (int i = 0; i < n; ++i) av.push_back(b.variable("A" + std::to_string(i)));
    std::vector<int> bv(m - 1, -1), cv(m, -1), ev(m, -1), dv(m + 1, -1);
    for (int i = 1; i <= m - 2; ++i) bv[i] = b.variable("B" + std::to_string(i));
    for (int i = 1; i <= m - 1; ++i) cv[i] = b.variable("C" + std::to_string(i));
    for (int i = 1; i <= m - 1; ++i) ev[i] = b.variable("E" + std::to_string(i));
    for (int i = 1; i <= m; ++i) dv[i] = b.variable("D" + std::to_string(i));
    av.push_back(dv[1]);
    auto V = Symbol::var;
    b.add(s, {V(av[0]), V(m == 2 ? cv[1] : bv[1])});
    for (int i = 1; i <= m - 3; ++i) b.add(bv[i], {V(cv[i]), V(bv[i + 1])});
    if (m >= 3) b.add(bv[m - 2], {V(cv[m - 2]), V(cv[m - 1])});
    for (int i = 0; i < n; ++i) b.add(av[i], {V(av[i + 1]), V(av[i + 1])});
    for (int i = 1; i <= m - 1; ++i) {
        b.add(cv[i], {V(dv[i]), V(ev[i])});
        b.add(cv[i], {V(dv[i]), V(dv[i + 1])});
        b.add(ev[i], {V(cv[i]), V(dv[i + 1])});
    }
    for (int i = 1; i <= m; ++i) b.add(dv[i], {Symbol::term(letter[i])});
    return b.finish();
}

PdaMachine witness_lprime(int n) {
    if (n < 2) throw PreconditionError("witness_lprime needs n >= 2");
    PdaBuilder b;
    int a = b.input("a");
    int z0 = b.stack("Z0");
    int sym = b.stack("A");
    b.set_bottom(z0);
    std::vector<int> q(n + 1), p(n);
    for (int j = 0; j <= n; ++j) q[j] = b.state("q" + std::to_string(j));
    for (int i = 0; i < n; ++i) p[i] = b.state("p" + std::to_string(i));
    b.set_start(q[0]);
    b.accept(q[0]);
    // Push phase: one A per block of n letters; the block position lives in p_i.
    b.push(q[0], z0, p[0], sym);
    b.push(q[0], sym, p[0], sym);
    for (int i = 0; i < n; ++i) b.stay(p[i], a, sym, i + 1 < n ? p[i + 1] : q[0]);
    // Pop phase: the number of blocks is counted modulo n+1.
    for (int j = 0; j <= n; ++j) b.pop(q[j], sym, q[(j + 1) % (n + 1)]);
    return b.finish(1);
}

} // namespace fturn
