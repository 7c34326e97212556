#include "fturn/finite_turn.hpp"

#include "fturn/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

namespace fturn {

namespace {

// Pending micro-steps of the procedure. Letter indices are 0-based.
enum class OpKind : char {
    counter,  // consumeInputAndCounter(j)
    stack,    // consumeInputAndStack(j)
    pop_cnt,  // second half of one consumeInputAndStack iteration
    read,     // read a_j^c
    push,     // push a_j^c
};

struct Op {
    OpKind kind;
    int j = 0;
    int c = 0;
    bool operator==(const Op&) const = default;
};

enum class Phase : char { init, run, drain };

// A state of the simulated procedure. In the run phase an empty op list is
// the loop head; in the drain phase it is the accepting state.
struct Config {
    Phase phase = Phase::run;
    int l = 0, r = 0;  // work context
    int t = 0;         // letter of the topmost stack run
    std::vector<int> counters;
    VarSet enabled;
    std::deque<Op> ops;
};

constexpr int kBottom = 0, kCnt = 1, kSep = 2;

class Builder {
public:
    Builder(const Grammar& cnf, const AlphabetOrder& order, const FiniteTurnOptions& opt)
        : g_(cnf), order_(order), opt_(opt), m_(static_cast<int>(order.size())) {
        borders_ = compute_borders(g_, order_);
        shorts_ = enumerate_short_trees(g_, order_, opt_.trees);
        partials_ = enumerate_partial_trees(g_, order_, borders_, opt_.trees);
        by_root_.assign(g_.variable_count(), {});
        for (std::size_t i = 0; i < partials_.size(); ++i) by_root_[partials_[i].root].push_back(int(i));
        has_partial_.assign(g_.variable_count(), 0);
        for (const auto& u : partials_) has_partial_[u.root] = 1;
    }

    std::size_t short_count() const { return shorts_.size(); }
    std::size_t partial_count() const { return partials_.size(); }

    PdaMachine build() {
        for (const auto& a : order_) b_.input(a);
        b_.stack("Z0");
        b_.stack("cnt");
        b_.stack("sep");
        b_.set_bottom(kBottom);
        Config init;
        init.phase = Phase::init;
        b_.set_start(intern(init));

        while (!work_.empty()) {
            auto [id, c] = std::move(work_.front());
            work_.pop_front();
            expand(id, c);
        }
        return b_.finish(m_ - 1);
    }

private:
    // Border-filtered enabled set: only roots that can still be chosen matter.
    void canonicalize(Config& c) const {
        if (c.phase == Phase::drain) {
            c.enabled = VarSet();
            c.l = c.r = 0;
        } else if (c.phase == Phase::run) {
            VarSet kept(g_.variable_count());
            for (int a : c.enabled.elements())
                if (has_partial_[a] && borders_[a] &&
                    compare_borders({c.l + 1, c.r + 1}, *borders_[a]) != std::strong_ordering::greater)
                    kept.insert(a);
            c.enabled = std::move(kept);
        }
        while (!c.ops.empty()) {
            const Op& op = c.ops.front();
            bool noop = false;
            switch (op.kind) {
            case OpKind::counter: noop = c.counters[op.j] == 0; break;
            case OpKind::read: noop = op.c == 0; break;
            case OpKind::push: noop = op.c == 0; break;
            case OpKind::stack: noop = c.t > op.j; break;
            case OpKind::pop_cnt: break;
            }
            if (!noop) break;
            c.ops.pop_front();
        }
    }

    std::string name_of(const Config& c) const {
        if (c.phase == Phase::init) return "init";
        std::ostringstream s;
        s << (c.phase == Phase::run ? (c.ops.empty() ? "head" : "run") : (c.ops.empty() ? "accept" : "drain"));
        if (c.phase == Phase::run) s << "_l" << c.l + 1 << "_r" << c.r + 1;
        s << "_t" << c.t + 1 << "_n";
        for (std::size_t j = 0; j < c.counters.size(); ++j) s << (j ? "x" : "") << c.counters[j];
        if (c.phase == Phase::run) {
            s << "_e";
            const auto& w = c.enabled.words();
            bool lead = true;
            for (std::size_t k = w.size(); k-- > 0;) {
                std::ostringstream part;
                part << std::hex << w[k];
                std::string hex = part.str();
                if (lead) {
                    if (w[k] == 0 && k > 0) continue;
                    s << hex;
                    lead = false;
                } else {
                    s << std::string(16 - hex.size(), '0') << hex;
                }
            }
        }
        for (const auto& op : c.ops) {
            switch (op.kind) {
            case OpKind::counter: s << "_C" << op.j + 1; break;
            case OpKind::stack: s << "_S" << op.j + 1; break;
            case OpKind::pop_cnt: s << "_P"; break;
            case OpKind::read: s << "_R" << op.j + 1 << "x" << op.c; break;
            case OpKind::push: s << "_U" << op.j + 1 << "x" << op.c; break;
            }
        }
        return s.str();
    }

    int intern(Config c) {
        if (c.phase != Phase::init) canonicalize(c);
        std::string name = name_of(c);
        if (auto q = b_.find_state(name)) return *q;
        if (static_cast<std::size_t>(b_.state_count()) >= opt_.state_budget)
            throw ResourceError("state budget of " + std::to_string(opt_.state_budget) + " exceeded");
        int id = b_.state(name);
        if (c.phase == Phase::drain && c.ops.empty()) b_.accept(id);
        work_.emplace_back(id, std::move(c));
        return id;
    }

    void stay_all(int from, int read, int to) {
        for (int z : {kBottom, kCnt, kSep}) b_.stay(from, read, z, to);
    }

    void expand(int id, const Config& c) {
        if (c.phase == Phase::init) {
            for (const auto& t : shorts_) {
                Config n;
                n.phase = Phase::run;
                n.l = 0;
                n.r = m_ - 1;
                n.t = m_ - 1;
                n.counters = t.yield;
                n.counters[0] = 0;
                n.enabled = t.varset;
                n.ops.push_back({OpKind::read, 0, t.yield[0]});
                b_.stay(id, -1, kBottom, intern(std::move(n)));
            }
            return;
        }
        if (c.ops.empty()) {
            if (c.phase == Phase::run) expand_head(id, c);
            return;
        }
        const Op op = c.ops.front();
        Config n = c;
        n.ops.pop_front();
        switch (op.kind) {
        case OpKind::counter:
            --n.counters[op.j];
            n.ops.push_front(op);
            stay_all(id, op.j, intern(std::move(n)));
            break;
        case OpKind::read:
            n.ops.push_front({OpKind::read, op.j, op.c - 1});
            stay_all(id, op.j, intern(std::move(n)));
            break;
        case OpKind::pop_cnt:
            b_.pop(id, kCnt, intern(std::move(n)));
            break;
        case OpKind::stack:
            if (c.t == op.j) {
                Config more = c;
                more.ops.push_front({OpKind::pop_cnt, 0, 0});
                b_.stay(id, op.j, kCnt, intern(std::move(more)));
                int done = intern(std::move(n));
                b_.stay(id, -1, kSep, done);
                b_.stay(id, -1, kBottom, done);
            } else {  // c.t < op.j: the runs in between are empty
                Config up = c;
                ++up.t;
                b_.pop(id, kSep, intern(std::move(up)));
            }
            break;
        case OpKind::push:
            if (c.t > op.j) {
                Config down = c;
                --down.t;
                int to = intern(std::move(down));
                for (int z : {kBottom, kCnt, kSep}) b_.push(id, z, to, kSep);
            } else if (c.t < op.j) {
                Config up = c;
                ++up.t;
                b_.pop(id, kSep, intern(std::move(up)));
            } else {
                n.ops.push_front({OpKind::push, op.j, op.c - 1});
                int to = intern(std::move(n));
                for (int z : {kBottom, kCnt, kSep}) b_.push(id, z, to, kCnt);
            }
            break;
        }
    }

    void expand_head(int id, const Config& c) {
        const int l = c.l, r = c.r;
        for (int a : c.enabled.elements()) {
            const Border ba = *borders_[a];
            const int la = ba.left - 1, ra = ba.right - 1;
            for (int ui : by_root_[a]) {
                const auto& u = partials_[ui];
                Config n = c;
                if (r < ra) {
                    for (int j = l + 1; j <= r - 1; ++j) n.ops.push_back({OpKind::counter, j, 0});
                    for (int j = r; j <= la; ++j) {
                        n.ops.push_back({OpKind::counter, j, 0});
                        n.ops.push_back({OpKind::stack, j, 0});
                    }
                } else {
                    for (int j = l + 1; j <= la; ++j) n.ops.push_back({OpKind::counter, j, 0});
                }
                n.l = la;
                n.r = ra;
                n.ops.push_back({OpKind::read, la, u.left_len});
                if (ra != la)
                    n.ops.push_back({OpKind::push, ra, u.right_len});
                else
                    n.ops.push_back({OpKind::read, ra, u.right_len});
                n.enabled |= u.varset;
                stay_all(id, -1, intern(std::move(n)));
            }
        }
        Config d = c;
        d.phase = Phase::drain;
        for (int j = l + 1; j <= r - 1; ++j) d.ops.push_back({OpKind::counter, j, 0});
        for (int j = r; j < m_; ++j) {
            d.ops.push_back({OpKind::counter, j, 0});
            d.ops.push_back({OpKind::stack, j, 0});
        }
        stay_all(id, -1, intern(std::move(d)));
    }

    const Grammar& g_;
    const AlphabetOrder& order_;
    FiniteTurnOptions opt_;
    int m_;
    BorderTable borders_;
    std::vector<ShortTreeSummary> shorts_;
    std::vector<PartialTreeSummary> partials_;
    std::vector<std::vector<int>> by_root_;
    std::vector<char> has_partial_;
    PdaBuilder b_;
    std::deque<std::pair<int, Config>> work_;
};

} // namespace

PdaMachine build_finite_turn_pda(const Grammar& g, const AlphabetOrder& order, const FiniteTurnOptions& options,
                                 FiniteTurnStats* stats) {
    if (order.empty()) throw PreconditionError("alphabet order is empty");
    if (auto bad = check_letter_bounded(g, order))
        throw PreconditionError("language is not letter-bounded: '" + format_word(*bad) + "' is generated");
    Grammar cnf = to_cnf(g);
    if (stats) {
        stats->input_var = g.variable_count();
        stats->input_symb = symb_count(g);
        stats->cnf_var = cnf.variable_count();
    }
    Builder builder(cnf, order, options);
    PdaMachine out = builder.build();
    if (stats) {
        stats->short_trees = builder.short_count();
        stats->partial_trees = builder.partial_count();
        stats->states = out.state_count();
    }
    return out;
}

PdaMachine cfg_to_finite_turn_pipeline(const Grammar& g, const AlphabetOrder& order,
                                       const FiniteTurnOptions& options, FiniteTurnStats* stats) {
    Grammar bin = binarize(remove_useless(g));
    PdaMachine out = build_finite_turn_pda(bin, order, options, stats);
    if (stats) {
        stats->input_var = g.variable_count();
        stats->input_symb = symb_count(g);
        stats->binarized_var = bin.variable_count();
    }
    return out;
}

namespace {

struct TripleGrammar {
    GrammarBuilder builder;
    std::size_t triples = 0;
};

TripleGrammar triple_grammar(const PdaMachine& m) {
    TripleGrammar out;
    auto& gb = out.builder;
    const int nq = m.state_count();
    const int nz = m.stack_count();
    for (const auto& a : m.input_alphabet()) gb.terminal(a);
    int start = gb.variable("S");
    gb.set_start(start);

    // pops[B] lists (from, to) of the pop moves with top B.
    std::vector<std::vector<std::pair<int, int>>> pops(nz);
    for (const auto& t : m.transitions())
        if (t.action == StackAction::pop) pops[t.top].push_back({t.from, t.to});

    std::unordered_map<long long, int> var_of;
    std::vector<std::tuple<int, int, int>> pending;
    auto triple = [&](int p, int z, int q) {
        long long key = (static_cast<long long>(p) * nz + z) * nq + q;
        auto it = var_of.find(key);
        if (it != var_of.end()) return it->second;
        int v = gb.variable("X" + std::to_string(p) + "_" + std::to_string(z) + "_" + std::to_string(q));
        var_of.emplace(key, v);
        pending.emplace_back(p, z, q);
        return v;
    };
    for (int qf : m.accepting()) gb.add(start, {Symbol::var(triple(m.start(), m.bottom(), qf))});

    while (!pending.empty()) {
        auto [p, z, q] = pending.back();
        pending.pop_back();
        ++out.triples;
        const int head = var_of[(static_cast<long long>(p) * nz + z) * nq + q];
        if (p == q) gb.add(head, {});
        for (int ti : m.outgoing()[p]) {
            const auto& t = m.transitions()[ti];
            if (t.top != z) continue;
            if (t.action == StackAction::stay) {
                std::vector<Symbol> body;
                if (t.read >= 0) body.push_back(Symbol::term(t.read));
                body.push_back(Symbol::var(triple(t.to, z, q)));
                gb.add(head, std::move(body));
            } else if (t.action == StackAction::push) {
                for (auto [r, r2] : pops[t.pushed]) {
                    int inner = triple(t.to, t.pushed, r);
                    int rest = triple(r2, z, q);
                    gb.add(head, {Symbol::var(inner), Symbol::var(rest)});
                }
            }
        }
    }
    return out;
}

} // namespace

Grammar pda_to_cfg(const PdaMachine& m) {
    return to_cnf(triple_grammar(m).builder.finish());
}

std::size_t pda_to_cfg_triple_count(const PdaMachine& m) {
    return triple_grammar(m).triples;
}

} // namespace fturn
