#include "fturn/unary.hpp"

#include "fturn/error.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <string>

namespace fturn {

namespace {

void require_unary(const PdaMachine& m) {
    if (m.input_count() != 1)
        throw PreconditionError("unary construction needs a one-letter input alphabet, got " +
                                std::to_string(m.input_count()) + " letters");
}

void check_query(const PdaMachine& m, const SegmentQuery& q) {
    if (q.from < 0 || q.from >= m.state_count() || q.to < 0 || q.to >= m.state_count())
        throw PreconditionError("segment query names an unknown state");
    if (q.top < 0 || q.top >= m.stack_count()) throw PreconditionError("segment query names an unknown stack symbol");
    if (q.budget && *q.budget < 1) throw PreconditionError("segment turn budget must be at least 1");
}

// Moves shared by both constructions, grouped for quick lookup.
struct MoveTables {
    // stays[p][Z] = (read, p')
    std::vector<std::vector<std::vector<std::pair<int, int>>>> stay_from;
    // stay_into[q][Z] = (read, q') with q' --read,Z--> q
    std::vector<std::vector<std::vector<std::pair<int, int>>>> stay_into;
    // pushes[p][Z] = (p', Z')
    std::vector<std::vector<std::vector<std::pair<int, int>>>> pushes;
    // pops_into[q][Z'] = q' with q' --Z'/pop--> q
    std::vector<std::vector<std::vector<int>>> pops_into;

    explicit MoveTables(const PdaMachine& m) {
        const int nq = m.state_count(), nz = m.stack_count();
        auto grid = [&](auto& t) { t.assign(nq, typename std::decay_t<decltype(t)>::value_type(nz)); };
        grid(stay_from);
        grid(stay_into);
        grid(pushes);
        grid(pops_into);
        for (const auto& t : m.transitions()) {
            switch (t.action) {
            case StackAction::stay:
                stay_from[t.from][t.top].push_back({t.read, t.to});
                stay_into[t.to][t.top].push_back({t.read, t.from});
                break;
            case StackAction::push: pushes[t.from][t.top].push_back({t.to, t.pushed}); break;
            case StackAction::pop: pops_into[t.to][t.top].push_back(t.from); break;
            }
        }
    }
};

} // namespace

PdaMachine restrict_to_letter(const PdaMachine& m, int letter) {
    if (letter < 0 || letter >= m.input_count()) throw PreconditionError("letter index out of range");
    std::vector<PdaTransition> ts;
    for (auto t : m.transitions()) {
        if (t.read >= 0 && t.read != letter) continue;
        if (t.read >= 0) t.read = 0;
        ts.push_back(t);
    }
    return PdaMachine(m.states(), {m.input_alphabet()[letter]}, m.stack_alphabet(), m.bottom(), m.start(),
                      m.accepting(), std::move(ts), m.turn_bound());
}

NfaMachine one_turn_segment_nfa(const PdaMachine& m, const SegmentQuery& q) {
    require_unary(m);
    check_query(m, q);
    const int nq = m.state_count(), nz = m.stack_count();
    const MoveTables mv(m);
    auto id = [&](int p, int z, int r) { return (p * nz + z) * nq + r; };
    std::vector<std::string> names;
    names.reserve(std::size_t(nq) * nq * nz);
    std::vector<int> accepting;
    for (int p = 0; p < nq; ++p)
        for (int z = 0; z < nz; ++z)
            for (int r = 0; r < nq; ++r) {
                names.push_back("t" + std::to_string(p) + "_" + std::to_string(z) + "_" + std::to_string(r));
                if (p == r) accepting.push_back(id(p, z, r));
            }
    std::vector<NfaTransition> ts;
    for (int p = 0; p < nq; ++p)
        for (int z = 0; z < nz; ++z)
            for (int r = 0; r < nq; ++r) {
                const int from = id(p, z, r);
                for (auto [read, p2] : mv.stay_from[p][z]) ts.push_back({from, read, id(p2, z, r)});
                for (auto [read, r2] : mv.stay_into[r][z]) ts.push_back({from, read, id(p, z, r2)});
                for (auto [p2, z2] : mv.pushes[p][z])
                    for (int r2 : mv.pops_into[r][z2]) ts.push_back({from, -1, id(p2, z2, r2)});
            }
    return NfaMachine(std::move(names), {m.input_alphabet()[0]}, id(q.from, q.top, q.to), std::move(accepting),
                      std::move(ts));
}

NfaMachine one_turn_pda_to_nfa(const PdaMachine& m) {
    require_unary(m);
    if (m.turn_bound() && *m.turn_bound() > 1)
        throw PreconditionError("one_turn_pda_to_nfa needs a machine declared with at most one turn");
    NfaMachine seg = one_turn_segment_nfa(m, {m.start(), m.bottom(), m.start(), std::nullopt});
    const int nq = m.state_count(), nz = m.stack_count();
    std::vector<std::string> names = seg.states();
    std::string start = "start";
    while (std::find(names.begin(), names.end(), start) != names.end()) start += "_";
    const int s = static_cast<int>(names.size());
    names.push_back(start);
    std::vector<NfaTransition> ts = seg.transitions();
    for (int qf : m.accepting()) ts.push_back({s, -1, (m.start() * nz + m.bottom()) * nq + qf});
    return NfaMachine(std::move(names), seg.alphabet(), s, seg.accepting(), std::move(ts));
}

struct KturnSegmentExplorer::Impl {
    using Var = std::array<int, 4>;  // p, Z, q, remaining turns

    Impl(const PdaMachine& m, std::size_t budget) : m(m), mv(m), budget(budget) {}

    int intern(const std::vector<Var>& seq) {
        auto it = index.find(seq);
        if (it != index.end()) return it->second;
        if (seqs.size() >= budget)
            throw ResourceError("sentential state budget of " + std::to_string(budget) + " exceeded");
        int id = static_cast<int>(seqs.size());
        index.emplace(seq, id);
        seqs.push_back(seq);
        succ.emplace_back();
        expanded.push_back(0);
        stats.max_sequence_length = std::max(stats.max_sequence_length, static_cast<int>(seq.size()));
        int sum = 0;
        for (const auto& v : seq) sum += v[3];
        stats.max_budget_sum = std::max(stats.max_budget_sum, sum);
        stats.states = seqs.size();
        return id;
    }

    void expand(int id) {
        if (expanded[id]) return;
        expanded[id] = 1;
        const std::vector<Var> seq = seqs[id];
        if (seq.empty()) return;
        std::vector<NfaTransition> out;
        const auto [p, z, q, i] = seq.front();
        auto replace_front = [&](Var v) {
            std::vector<Var> n = seq;
            n.front() = v;
            return n;
        };
        for (auto [read, p2] : mv.stay_from[p][z]) out.push_back({id, read, intern(replace_front({p2, z, q, i}))});
        for (auto [read, q2] : mv.stay_into[q][z]) out.push_back({id, read, intern(replace_front({p, z, q2, i}))});
        for (auto [p2, z2] : mv.pushes[p][z])
            for (int q2 : mv.pops_into[q][z2]) out.push_back({id, -1, intern(replace_front({p2, z2, q2, i}))});
        if (i == 1 && p == q) out.push_back({id, -1, intern(std::vector<Var>(seq.begin() + 1, seq.end()))});
        for (int r = 0; r < m.state_count(); ++r)
            for (int i1 = 1; i1 < i; ++i1)
                for (int i2 = 1; i1 + i2 <= i; ++i2) {
                    Var left{p, z, r, i1}, right{r, z, q, i2};
                    std::vector<Var> n;
                    n.reserve(seq.size() + 1);
                    if (i2 < i1) {
                        n.push_back(right);
                        n.push_back(left);
                    } else {
                        n.push_back(left);
                        n.push_back(right);
                    }
                    n.insert(n.end(), seq.begin() + 1, seq.end());
                    out.push_back({id, -1, intern(n)});
                }
        stats.transitions += out.size();
        succ[id] = std::move(out);
    }

    std::string name(int id) const {
        const auto& seq = seqs[id];
        if (seq.empty()) return "done";
        std::string s;
        for (const auto& v : seq)
            s += "v" + std::to_string(v[0]) + "_" + std::to_string(v[1]) + "_" + std::to_string(v[2]) + "_" +
                 std::to_string(v[3]);
        return s;
    }

    const PdaMachine m;
    MoveTables mv;
    std::size_t budget;
    std::map<std::vector<Var>, int> index;
    std::vector<std::vector<Var>> seqs;
    std::vector<std::vector<NfaTransition>> succ;
    std::vector<char> expanded;
    KturnStats stats;
};

KturnSegmentExplorer::KturnSegmentExplorer(const PdaMachine& m, std::size_t state_budget) {
    require_unary(m);
    impl_ = std::make_unique<Impl>(m, state_budget);
}

KturnSegmentExplorer::~KturnSegmentExplorer() = default;
KturnSegmentExplorer::KturnSegmentExplorer(KturnSegmentExplorer&&) noexcept = default;
KturnSegmentExplorer& KturnSegmentExplorer::operator=(KturnSegmentExplorer&&) noexcept = default;

int KturnSegmentExplorer::start(const SegmentQuery& q) {
    check_query(impl_->m, q);
    if (!q.budget) throw PreconditionError("k-turn segment query needs a turn budget");
    return impl_->intern({{q.from, q.top, q.to, *q.budget}});
}

const std::vector<NfaTransition>& KturnSegmentExplorer::successors(int state) {
    impl_->expand(state);
    return impl_->succ[state];
}

bool KturnSegmentExplorer::accepting(int state) const { return impl_->seqs[state].empty(); }

std::string KturnSegmentExplorer::name(int state) const { return impl_->name(state); }

int KturnSegmentExplorer::state_count() const { return static_cast<int>(impl_->seqs.size()); }

const KturnStats& KturnSegmentExplorer::stats() const { return impl_->stats; }

NfaMachine KturnSegmentExplorer::explore_all(int start_state, const std::vector<NfaTransition>& extra,
                                             const std::vector<std::string>& extra_names) {
    for (int id = 0; id < state_count(); ++id) impl_->expand(id);
    std::vector<std::string> names;
    std::vector<int> accepting_states;
    std::vector<NfaTransition> ts;
    for (int id = 0; id < state_count(); ++id) {
        names.push_back(name(id));
        if (accepting(id)) accepting_states.push_back(id);
        ts.insert(ts.end(), impl_->succ[id].begin(), impl_->succ[id].end());
    }
    names.insert(names.end(), extra_names.begin(), extra_names.end());
    ts.insert(ts.end(), extra.begin(), extra.end());
    return NfaMachine(std::move(names), {impl_->m.input_alphabet()[0]}, start_state, std::move(accepting_states),
                      std::move(ts));
}

SharedSegmentNfa kturn_segment_nfas(const PdaMachine& m, const std::vector<SegmentQuery>& queries,
                                    std::size_t state_budget) {
    if (queries.empty()) throw PreconditionError("kturn_segment_nfas needs at least one query");
    KturnSegmentExplorer ex(m, state_budget);
    std::vector<int> starts;
    for (const auto& q : queries) starts.push_back(ex.start(q));
    NfaMachine nfa = ex.explore_all(starts.front(), {}, {});
    return {std::move(nfa), std::move(starts), ex.stats()};
}

NfaMachine kturn_segment_nfa(const PdaMachine& m, const SegmentQuery& q, KturnStats* stats) {
    auto shared = kturn_segment_nfas(m, {q});
    if (stats) *stats = shared.stats;
    return std::move(shared.nfa);
}

NfaMachine kturn_unary_pda_to_nfa(const PdaMachine& m, int k, KturnStats* stats) {
    require_unary(m);
    if (k < 1) throw PreconditionError("turn budget must be at least 1");
    KturnSegmentExplorer ex(m);
    std::vector<int> targets;
    for (int qf : m.accepting()) targets.push_back(ex.start({m.start(), m.bottom(), qf, k}));
    // Exploring may add states, so the fresh start index is fixed afterwards.
    NfaMachine probe = ex.explore_all(0, {}, {});
    const int s = probe.state_count();
    std::vector<NfaTransition> extra;
    for (int t : targets) extra.push_back({s, -1, t});
    NfaMachine out = ex.explore_all(s, extra, {"start"});
    if (stats) *stats = ex.stats();
    return out;
}

} // namespace fturn
