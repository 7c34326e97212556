#include "fturn/turn_reduction.hpp"

#include "fturn/error.hpp"
#include "fturn/size_report.hpp"
#include "fturn/unary.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>
#include <unordered_map>

namespace fturn {

std::vector<PiElement> pi_elements(int m) {
    std::vector<PiElement> out;
    for (int a = 0; a < m; ++a) out.push_back({a, a});
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) out.push_back({a, b});
    return out;
}

std::pair<int, int> pi_projections(const Word& w, const AlphabetOrder& order) {
    if (w.empty()) throw PreconditionError("projections are undefined for the empty word");
    int prev = -1;
    for (const auto& s : w) {
        auto it = std::find(order.begin(), order.end(), s);
        if (it == order.end()) throw PreconditionError("letter '" + s + "' is not in the alphabet order");
        int pos = static_cast<int>(it - order.begin());
        if (pos < prev) throw PreconditionError("word '" + format_word(w) + "' is not sorted");
        prev = pos;
    }
    auto pos = [&](const std::string& s) { return static_cast<int>(std::find(order.begin(), order.end(), s) - order.begin()); };
    return {pos(w.front()), pos(w.back())};
}

namespace {

// [p,Z,q,i,ab] with a < b.
struct Plain {
    int p, z, q, i, a, b;
};

struct Item {
    enum Kind { plain, nfa, left, right } kind = plain;
    Plain x{};       // plain; right: the plain side; left: Y when y_letter < 0
    int letter = -1; // nfa, left, right: letter of the unary side
    int n = -1;      // NFA state of the unary side
    int y_letter = -1;
    int y_n = -1;
};

std::string plain_name(const Plain& v) {
    return "V" + std::to_string(v.p) + "_" + std::to_string(v.z) + "_" + std::to_string(v.q) + "_" +
           std::to_string(v.i) + "_" + std::to_string(v.a + 1) + "x" + std::to_string(v.b + 1);
}

std::string nfa_name(int letter, int n) { return "N" + std::to_string(letter + 1) + "_" + std::to_string(n); }

std::string item_name(const Item& it) {
    switch (it.kind) {
    case Item::plain: return plain_name(it.x);
    case Item::nfa: return nfa_name(it.letter, it.n);
    case Item::left:
        return "L" + std::to_string(it.letter + 1) + "_" + std::to_string(it.n) + "_" +
               (it.y_letter < 0 ? plain_name(it.x) : nfa_name(it.y_letter, it.y_n));
    case Item::right:
        return "R" + std::to_string(it.letter + 1) + "_" + std::to_string(it.n) + "_" + plain_name(it.x);
    }
    return {};
}

class ReductionBuilder {
public:
    ReductionBuilder(const PdaMachine& m, const AlphabetOrder& order, int budget)
        : m_(m), order_(order), budget_(budget), nq_(m.state_count()), nz_(m.stack_count()) {
        for (const auto& s : m.input_alphabet())
            if (std::find(order.begin(), order.end(), s) == order.end())
                throw PreconditionError("input letter '" + s + "' is not in the alphabet order");
        std::set<std::string> seen;
        for (const auto& s : order)
            if (!seen.insert(s).second) throw PreconditionError("alphabet order repeats '" + s + "'");
        for (const auto& s : order) letter_input_.push_back(m.find_input(s).value_or(-2));
        build_tables();
        build_nfas();
        for (const auto& s : order) gb_.terminal(s);
    }

    Grammar run(ReductionStats* stats) {
        int s = gb_.variable("S");
        gb_.set_start(s);
        for (int qf : m_.accepting())
            for (int i = 1; i <= budget_; ++i)
                for (const auto& u : pi_elements(static_cast<int>(order_.size())))
                    add(s, {ref(m_.start(), m_.bottom(), qf, i, u.first, u.last)});
        while (!work_.empty()) {
            auto [id, it] = work_.front();
            work_.pop_front();
            expand(id, it);
        }
        if (stats) {
            stats_.productions = gb_.production_count();
            for (const auto& n : nfas_) stats_.nfa_states.push_back(static_cast<std::size_t>(n.state_count()));
            *stats = stats_;
        }
        Grammar g = gb_.finish();
        try {
            return remove_useless(g);
        } catch (const EmptyLanguageError&) {
            return Grammar({"S"}, order_, 0, {}, g.epsilon_stripped());
        }
    }

private:
    void build_tables() {
        stay_from_.assign(nq_, std::vector<std::vector<std::pair<int, int>>>(nz_));
        stay_into_ = stay_from_;
        pushes_ = stay_from_;
        pops_into_.assign(nq_, std::vector<std::vector<int>>(nz_));
        for (const auto& t : m_.transitions()) {
            switch (t.action) {
            case StackAction::stay:
                stay_from_[t.from][t.top].push_back({t.read, t.to});
                stay_into_[t.to][t.top].push_back({t.read, t.from});
                break;
            case StackAction::push: pushes_[t.from][t.top].push_back({t.to, t.pushed}); break;
            case StackAction::pop: pops_into_[t.to][t.top].push_back(t.from); break;
            }
        }
    }

    void build_nfas() {
        for (std::size_t a = 0; a < order_.size(); ++a) {
            PdaMachine unary = letter_input_[a] >= 0 ? restrict_to_letter(m_, letter_input_[a]) : epsilon_only(a);
            nfas_.emplace_back(unary);
        }
    }

    PdaMachine epsilon_only(std::size_t a) const {
        std::vector<PdaTransition> ts;
        for (const auto& t : m_.transitions())
            if (t.read < 0) ts.push_back(t);
        return PdaMachine(m_.states(), {order_[a]}, m_.stack_alphabet(), m_.bottom(), m_.start(), m_.accepting(),
                          std::move(ts), m_.turn_bound());
    }

    int nfa_start(int letter, int p, int z, int q, int i) { return nfas_[letter].start({p, z, q, i}); }

    int intern(const Item& it) {
        std::string name = item_name(it);
        if (auto v = gb_.find_variable(name)) return *v;
        int v = gb_.variable(name);
        work_.push_back({v, it});
        switch (it.kind) {
        case Item::plain: ++stats_.plain_variables; break;
        case Item::nfa: ++stats_.unary_variables; break;
        default: ++stats_.paired_variables; break;
        }
        return v;
    }

    // Item for [p,Z,q,i,u]: unary tags live in the segment NFA.
    Item item(int p, int z, int q, int i, int a, int b) {
        Item it;
        if (a == b) {
            it.kind = Item::nfa;
            it.letter = a;
            it.n = nfa_start(a, p, z, q, i);
        } else {
            it.x = {p, z, q, i, a, b};
        }
        return it;
    }

    Symbol ref(int p, int z, int q, int i, int a, int b) { return Symbol::var(intern(item(p, z, q, i, a, b))); }

    void add(int head, std::vector<Symbol> body) { gb_.add(head, std::move(body)); }

    Symbol letter(int a) const { return Symbol::term(a); }

    bool reads(int read, int a) const { return read < 0 || read == letter_input_[a]; }

    void expand(int id, const Item& it) {
        switch (it.kind) {
        case Item::plain: expand_plain(id, it.x); break;
        case Item::nfa: expand_nfa(id, it); break;
        case Item::left: expand_left(id, it); break;
        case Item::right: expand_right(id, it); break;
        }
    }

    void expand_plain(int id, const Plain& v) {
        const auto [p, z, q, i, a, b] = v;
        for (auto [read, p2] : stay_from_[p][z])
            if (reads(read, a)) {
                Symbol rest = ref(p2, z, q, i, a, b);
                if (read < 0) add(id, {rest});
                else add(id, {letter(a), rest});
            }
        for (auto [read, q2] : stay_into_[q][z])
            if (reads(read, b)) {
                Symbol rest = ref(p, z, q2, i, a, b);
                if (read < 0) add(id, {rest});
                else add(id, {rest, letter(b)});
            }
        for (auto [p2, z2] : pushes_[p][z])
            for (int q2 : pops_into_[q][z2]) add(id, {ref(p2, z2, q2, i, a, b)});
        if (i == 1 && p == q) add(id, {});
        for (int r = 0; r < nq_; ++r)
            for (int i1 = 1; i1 < i; ++i1)
                for (int i2 = 1; i1 + i2 <= i; ++i2) {
                    // Both parts carry pairs: the left one ends no later than the right one starts.
                    for (int x = a + 1; x < b; ++x)
                        for (int y = x; y < b; ++y)
                            add(id, {ref(p, z, r, i1, a, x), ref(r, z, q, i2, y, b)});
                    // Unary left part: derived first, then the right part takes over.
                    for (int y = a; y <= b; ++y) {
                        Item pair;
                        pair.kind = Item::left;
                        pair.letter = a;
                        pair.n = nfa_start(a, p, z, r, i1);
                        Item rhs = item(r, z, q, i2, y, b);
                        if (rhs.kind == Item::nfa) {
                            pair.y_letter = rhs.letter;
                            pair.y_n = rhs.n;
                        } else {
                            pair.x = rhs.x;
                        }
                        add(id, {Symbol::var(intern(pair))});
                    }
                    // Unary right part with a pair on the left; derived from the right end inwards.
                    for (int x = a + 1; x <= b; ++x) {
                        Item pair;
                        pair.kind = Item::right;
                        pair.letter = b;
                        pair.n = nfa_start(b, r, z, q, i2);
                        pair.x = {p, z, r, i1, a, x};
                        add(id, {Symbol::var(intern(pair))});
                    }
                }
    }

    void expand_nfa(int id, const Item& it) {
        auto& n = nfas_[it.letter];
        const std::vector<NfaTransition> moves = n.successors(it.n);
        for (const NfaTransition& tr : moves) {
            Item next = it;
            next.n = tr.to;
            Symbol rest = Symbol::var(intern(next));
            if (tr.symbol < 0) add(id, {rest});
            else add(id, {letter(it.letter), rest});
        }
        if (n.accepting(it.n)) add(id, {});
    }

    void expand_left(int id, const Item& it) {
        auto& n = nfas_[it.letter];
        const std::vector<NfaTransition> moves = n.successors(it.n);
        for (const NfaTransition& tr : moves) {
            Item next = it;
            next.n = tr.to;
            Symbol rest = Symbol::var(intern(next));
            if (tr.symbol < 0) add(id, {rest});
            else add(id, {letter(it.letter), rest});
        }
        if (n.accepting(it.n)) {
            Item y;
            if (it.y_letter < 0) {
                y.x = it.x;
            } else {
                y.kind = Item::nfa;
                y.letter = it.y_letter;
                y.n = it.y_n;
            }
            add(id, {Symbol::var(intern(y))});
        }
    }

    void expand_right(int id, const Item& it) {
        auto& n = nfas_[it.letter];
        const std::vector<NfaTransition> moves = n.successors(it.n);
        for (const NfaTransition& tr : moves) {
            Item next = it;
            next.n = tr.to;
            Symbol rest = Symbol::var(intern(next));
            if (tr.symbol < 0) add(id, {rest});
            else add(id, {rest, letter(it.letter)});
        }
        if (n.accepting(it.n)) {
            Item x;
            x.x = it.x;
            add(id, {Symbol::var(intern(x))});
        }
    }

    const PdaMachine& m_;
    const AlphabetOrder& order_;
    int budget_;
    int nq_, nz_;
    std::vector<int> letter_input_;
    std::vector<std::vector<std::vector<std::pair<int, int>>>> stay_from_, stay_into_, pushes_;
    std::vector<std::vector<std::vector<int>>> pops_into_;
    std::vector<KturnSegmentExplorer> nfas_;
    GrammarBuilder gb_;
    std::deque<std::pair<int, Item>> work_;
    ReductionStats stats_;
};

} // namespace

Grammar build_reduction_grammar(const PdaMachine& m, int k, const AlphabetOrder& order,
                                std::optional<int> turn_budget, ReductionStats* stats) {
    if (k < 1) throw PreconditionError("turn bound k must be at least 1");
    if (order.empty()) throw PreconditionError("alphabet order is empty");
    const int budget = turn_budget.value_or(k);
    if (budget < 1) throw PreconditionError("turn budget must be at least 1");
    return ReductionBuilder(m, order, budget).run(stats);
}

PdaMachine grammar_to_one_state_pda(const Grammar& g) {
    std::unordered_map<std::string, int> taken;
    for (const auto& v : g.variables()) taken.emplace(v, 0);
    for (const auto& t : g.terminals()) taken.emplace(t, 0);
    PdaBuilder pb;
    const int bottom = pb.stack(fresh_name("Z0", taken));
    pb.set_bottom(bottom);
    for (const auto& t : g.terminals()) pb.input(t);
    const int init = pb.state("init");
    const int pop = pb.state("pop");
    const int read = pb.state("read");
    pb.set_start(init);
    pb.accept(pop);
    if (g.epsilon_stripped()) pb.accept(init);
    std::vector<int> top(g.variable_count());
    for (int v = 0; v < g.variable_count(); ++v) top[v] = pb.state("top_" + g.variables()[v]);

    // Symbols that are ever stored on the physical stack, as stack indices.
    std::vector<int> stack_of_var(g.variable_count(), -1), stack_of_term(g.terminal_count(), -1);
    auto leading = [](const Production& p) {
        std::size_t k = 0;
        while (k < p.body.size() && p.body[k].terminal) ++k;
        return k;
    };
    for (const auto& p : g.productions())
        for (std::size_t j = leading(p) + 1; j < p.body.size(); ++j) {
            Symbol s = p.body[j];
            int& slot = s.terminal ? stack_of_term[s.index] : stack_of_var[s.index];
            if (slot < 0) slot = pb.stack(g.name(s));
        }
    std::vector<int> tops{bottom};
    for (int z : stack_of_var)
        if (z >= 0) tops.push_back(z);
    for (int z : stack_of_term)
        if (z >= 0) tops.push_back(z);
    std::sort(tops.begin(), tops.end());

    for (std::size_t pi = 0; pi < g.productions().size(); ++pi) {
        const Production& p = g.productions()[pi];
        const std::size_t lead = leading(p);
        const int target = lead < p.body.size() ? top[p.body[lead].index] : pop;
        // Operations: read the leading terminals, then push the tail bottom-most first.
        struct Op {
            bool push;
            int sym;
        };
        std::vector<Op> ops;
        for (std::size_t j = 0; j < lead; ++j) ops.push_back({false, p.body[j].index});
        for (std::size_t j = p.body.size(); j > lead + 1; --j) {
            Symbol s = p.body[j - 1];
            ops.push_back({true, s.terminal ? stack_of_term[s.index] : stack_of_var[s.index]});
        }
        int cur = top[p.head];
        std::optional<int> known;
        if (ops.empty()) {
            for (int z : tops) pb.stay(cur, -1, z, target);
            continue;
        }
        for (std::size_t j = 0; j < ops.size(); ++j) {
            const int next =
                j + 1 == ops.size() ? target : pb.state("c" + std::to_string(pi) + "_" + std::to_string(j + 1));
            const std::vector<int> cand = known ? std::vector<int>{*known} : tops;
            for (int z : cand) {
                if (ops[j].push) pb.push(cur, z, next, ops[j].sym);
                else pb.stay(cur, ops[j].sym, z, next);
            }
            if (ops[j].push) known = ops[j].sym;
            cur = next;
        }
    }

    pb.stay(init, -1, bottom, top[g.start()]);
    for (int v = 0; v < g.variable_count(); ++v)
        if (stack_of_var[v] >= 0) pb.pop(pop, stack_of_var[v], top[v]);
    for (int t = 0; t < g.terminal_count(); ++t)
        if (stack_of_term[t] >= 0) {
            pb.stay(pop, t, stack_of_term[t], read);
            pb.pop(read, stack_of_term[t], pop);
        }
    return pb.finish(std::nullopt);
}

PdaMachine reduce_turns(const PdaMachine& m, int k, const AlphabetOrder& order, std::optional<int> turn_budget,
                        TurnReductionReport* report) {
    TurnReductionReport r;
    Grammar g = build_reduction_grammar(m, k, order, turn_budget, &r.grammar);
    PdaMachine one = grammar_to_one_state_pda(g);
    PdaMachine normal = normalize_pda(to_loose(one)).with_turn_bound(static_cast<int>(order.size()) - 1);
    if (report) {
        const SizeReport gs = measure(g), ps = measure(one), ns = measure(normal);
        r.grammar_var = gs.var_count;
        r.grammar_symb = gs.symb_count;
        r.pda_states = ps.state_count;
        r.pda_size = ps.pda_size;
        r.normalized_states = ns.state_count;
        r.normalized_size = ns.pda_size;
        *report = r;
    }
    return normal;
}

} // namespace fturn
