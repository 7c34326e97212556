#include "fturn/nfa.hpp"

#include "fturn/error.hpp"
#include "text.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fturn {

NfaMachine::NfaMachine(std::vector<std::string> states, std::vector<std::string> alphabet, int start,
                       std::vector<int> accepting, std::vector<NfaTransition> transitions)
    : states_(std::move(states)), alphabet_(std::move(alphabet)), start_(start) {
    std::unordered_map<std::string, int> state_index;
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (!text::is_token(states_[i]) || states_[i] == "eps")
            throw PreconditionError("invalid state name '" + states_[i] + "'");
        if (!state_index.emplace(states_[i], int(i)).second)
            throw PreconditionError("duplicate state '" + states_[i] + "'");
    }
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
        if (!text::is_token(alphabet_[i]) || alphabet_[i] == "eps")
            throw PreconditionError("invalid symbol name '" + alphabet_[i] + "'");
        if (!symbol_index_.emplace(alphabet_[i], int(i)).second)
            throw PreconditionError("duplicate symbol '" + alphabet_[i] + "'");
    }
    const int nq = state_count();
    if (start_ < 0 || start_ >= nq) throw PreconditionError("start state out of range");
    accepting_mask_.assign(nq, 0);
    for (int q : accepting) {
        if (q < 0 || q >= nq) throw PreconditionError("accepting state out of range");
        if (!accepting_mask_[q]) accepting_.push_back(q);
        accepting_mask_[q] = 1;
    }
    std::set<NfaTransition> seen;
    outgoing_.assign(nq, {});
    for (const auto& t : transitions) {
        if (t.from < 0 || t.from >= nq || t.to < 0 || t.to >= nq)
            throw PreconditionError("transition endpoint is not a declared state");
        if (t.symbol < -1 || t.symbol >= static_cast<int>(alphabet_.size()))
            throw PreconditionError("transition symbol out of range");
        if (!seen.insert(t).second) continue;
        outgoing_[t.from].push_back(static_cast<int>(transitions_.size()));
        transitions_.push_back(t);
    }
}

std::optional<int> NfaMachine::find_symbol(std::string_view name) const {
    auto it = symbol_index_.find(std::string(name));
    if (it == symbol_index_.end()) return std::nullopt;
    return it->second;
}

bool NfaMachine::operator==(const NfaMachine& o) const {
    return states_ == o.states_ && alphabet_ == o.alphabet_ && start_ == o.start_ &&
           accepting_ == o.accepting_ && transitions_ == o.transitions_;
}

NfaMachine parse_nfa(std::string_view doc) {
    std::optional<std::vector<std::string>> states, alphabet, accept;
    std::optional<std::string> start;
    struct Raw {
        std::size_t line;
        std::string from, sym, to;
    };
    std::vector<Raw> raw;
    for (const auto& ln : text::lines(doc)) {
        std::string_view rest;
        auto list = [&](std::optional<std::vector<std::string>>& slot) {
            slot = text::split_ws(rest);
            for (const auto& t : *slot) text::require_token(t, ln.number);
        };
        if (text::header(ln.content, "states", rest)) { list(states); continue; }
        if (text::header(ln.content, "alphabet", rest)) { list(alphabet); continue; }
        if (text::header(ln.content, "accept", rest)) { list(accept); continue; }
        if (text::header(ln.content, "start", rest)) {
            auto toks = text::split_ws(rest);
            if (toks.size() != 1) throw ParseError(ln.number, "start header needs exactly one state");
            start = toks[0];
            continue;
        }
        auto arrow = ln.content.find("->");
        if (arrow == std::string_view::npos) throw ParseError(ln.number, "expected a header or a transition");
        auto lhs = text::split_ws(ln.content.substr(0, arrow));
        auto rhs = text::split_ws(ln.content.substr(arrow + 2));
        if (lhs.size() != 2 || rhs.size() != 1) throw ParseError(ln.number, "transition must read 'q sym -> p'");
        raw.push_back({ln.number, lhs[0], lhs[1], rhs[0]});
    }
    if (!states) throw ParseError(1, "missing 'states:' header");
    if (!start) throw ParseError(1, "missing 'start:' header");
    std::unordered_map<std::string, int> qi, ai;
    for (std::size_t i = 0; i < states->size(); ++i) qi.emplace((*states)[i], int(i));
    std::vector<std::string> alpha = alphabet.value_or(std::vector<std::string>{});
    for (std::size_t i = 0; i < alpha.size(); ++i) ai.emplace(alpha[i], int(i));
    auto state = [&](const std::string& s, std::size_t line) {
        auto it = qi.find(s);
        if (it == qi.end()) throw ParseError(line, "undeclared state '" + s + "'");
        return it->second;
    };
    std::vector<int> acc;
    for (const auto& a : accept.value_or(std::vector<std::string>{})) acc.push_back(state(a, 1));
    std::vector<NfaTransition> ts;
    for (const auto& r : raw) {
        int sym = -1;
        if (r.sym != "eps") {
            auto it = ai.find(r.sym);
            if (it == ai.end()) throw ParseError(r.line, "undeclared symbol '" + r.sym + "'");
            sym = it->second;
        }
        ts.push_back({state(r.from, r.line), sym, state(r.to, r.line)});
    }
    return NfaMachine(*states, alpha, state(*start, 1), acc, ts);
}

std::string serialize_nfa(const NfaMachine& n) {
    std::ostringstream out;
    out << "states: " << text::join(n.states()) << "\n";
    out << "alphabet: " << text::join(n.alphabet()) << "\n";
    out << "start: " << n.states()[n.start()] << "\n";
    std::vector<std::string> acc;
    for (int q : n.accepting()) acc.push_back(n.states()[q]);
    out << "accept: " << text::join(acc) << "\n";
    for (const auto& t : n.transitions())
        out << n.states()[t.from] << ' ' << (t.symbol < 0 ? std::string("eps") : n.alphabet()[t.symbol])
            << " -> " << n.states()[t.to] << "\n";
    return out.str();
}

std::vector<int> epsilon_closure(const NfaMachine& n, std::vector<int> states) {
    std::vector<char> in(n.state_count(), 0);
    std::vector<int> work;
    for (int q : states)
        if (!in[q]) in[q] = 1, work.push_back(q);
    std::vector<int> out = work;
    while (!work.empty()) {
        int q = work.back();
        work.pop_back();
        for (int ti : n.outgoing()[q]) {
            const auto& t = n.transitions()[ti];
            if (t.symbol == -1 && !in[t.to]) {
                in[t.to] = 1;
                work.push_back(t.to);
                out.push_back(t.to);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool nfa_accepts(const NfaMachine& n, const Word& w) {
    std::vector<int> cur = epsilon_closure(n, {n.start()});
    for (const auto& s : w) {
        auto sym = n.find_symbol(s);
        if (!sym) return false;
        std::vector<int> next;
        for (int q : cur)
            for (int ti : n.outgoing()[q])
                if (n.transitions()[ti].symbol == *sym) next.push_back(n.transitions()[ti].to);
        cur = epsilon_closure(n, std::move(next));
        if (cur.empty()) return false;
    }
    return std::any_of(cur.begin(), cur.end(), [&](int q) { return n.is_accepting(q); });
}

NfaMachine trim_nfa(const NfaMachine& n) {
    const int nq = n.state_count();
    std::vector<char> fwd(nq, 0), bwd(nq, 0);
    std::vector<int> work{n.start()};
    fwd[n.start()] = 1;
    while (!work.empty()) {
        int q = work.back();
        work.pop_back();
        for (int ti : n.outgoing()[q]) {
            int p = n.transitions()[ti].to;
            if (!fwd[p]) fwd[p] = 1, work.push_back(p);
        }
    }
    std::vector<std::vector<int>> incoming(nq);
    for (const auto& t : n.transitions()) incoming[t.to].push_back(t.from);
    for (int q : n.accepting())
        if (!bwd[q]) bwd[q] = 1, work.push_back(q);
    while (!work.empty()) {
        int q = work.back();
        work.pop_back();
        for (int p : incoming[q])
            if (!bwd[p]) bwd[p] = 1, work.push_back(p);
    }
    std::vector<int> remap(nq, -1);
    std::vector<std::string> names;
    for (int q = 0; q < nq; ++q) {
        if ((fwd[q] && bwd[q]) || q == n.start()) {
            remap[q] = static_cast<int>(names.size());
            names.push_back(n.states()[q]);
        }
    }
    std::vector<int> acc;
    for (int q : n.accepting())
        if (remap[q] >= 0) acc.push_back(remap[q]);
    std::vector<NfaTransition> ts;
    for (const auto& t : n.transitions())
        if (remap[t.from] >= 0 && remap[t.to] >= 0 && fwd[t.to] && bwd[t.to])
            ts.push_back({remap[t.from], t.symbol, remap[t.to]});
    return NfaMachine(names, n.alphabet(), remap[n.start()], acc, ts);
}

} // namespace fturn
