#include "fturn/pda.hpp"

#include "fturn/error.hpp"
#include "text.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fturn {

namespace {

void index_names(const std::vector<std::string>& names, std::unordered_map<std::string, int>& index,
                 const char* what) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!text::is_token(names[i]) || names[i] == "eps")
            throw PreconditionError(std::string("invalid ") + what + " name '" + names[i] + "'");
        if (!index.emplace(names[i], static_cast<int>(i)).second)
            throw PreconditionError(std::string("duplicate ") + what + " '" + names[i] + "'");
    }
}

std::optional<int> lookup(const std::unordered_map<std::string, int>& m, std::string_view name) {
    auto it = m.find(std::string(name));
    if (it == m.end()) return std::nullopt;
    return it->second;
}

} // namespace

std::string fresh_name(const std::string& base, const std::unordered_map<std::string, int>& taken) {
    if (!taken.count(base)) return base;
    for (int k = 2;; ++k) {
        std::string candidate = base + "_" + std::to_string(k);
        if (!taken.count(candidate)) return candidate;
    }
}

PdaMachine::PdaMachine(std::vector<std::string> states, std::vector<std::string> input,
                       std::vector<std::string> stack, int bottom, int start, std::vector<int> accepting,
                       std::vector<PdaTransition> transitions, std::optional<int> turn_bound)
    : states_(std::move(states)), input_(std::move(input)), stack_(std::move(stack)), bottom_(bottom),
      start_(start), turn_bound_(turn_bound) {
    index_names(states_, state_index_, "state");
    index_names(input_, input_index_, "input symbol");
    index_names(stack_, stack_index_, "stack symbol");
    const int nq = state_count(), ns = stack_count(), ni = input_count();
    if (bottom_ < 0 || bottom_ >= ns) throw PreconditionError("bottom symbol is not a stack symbol");
    if (start_ < 0 || start_ >= nq) throw PreconditionError("start state is not a state");
    if (turn_bound_ && *turn_bound_ < 0) throw PreconditionError("turn bound must be nonnegative");
    accepting_mask_.assign(nq, 0);
    for (int q : accepting) {
        if (q < 0 || q >= nq) throw PreconditionError("accepting state out of range");
        if (!accepting_mask_[q]) accepting_.push_back(q);
        accepting_mask_[q] = 1;
    }
    std::set<PdaTransition> seen;
    outgoing_.assign(nq, {});
    for (const auto& t : transitions) {
        if (t.from < 0 || t.from >= nq || t.to < 0 || t.to >= nq)
            throw PreconditionError("transition endpoint out of range");
        if (t.top < 0 || t.top >= ns) throw PreconditionError("transition top symbol out of range");
        if (t.read < -1 || t.read >= ni) throw PreconditionError("transition input symbol out of range");
        const std::string where = " in transition from '" + states_[t.from] + "'";
        if (t.read >= 0 && t.action != StackAction::stay)
            throw PreconditionError("reading move changes the stack" + where);
        if (t.action == StackAction::push) {
            if (t.pushed < 0 || t.pushed >= ns) throw PreconditionError("pushed symbol out of range" + where);
            if (t.pushed == bottom_) throw PreconditionError("bottom symbol pushed" + where);
        } else if (t.pushed != -1) {
            throw PreconditionError("non-push transition names a pushed symbol" + where);
        }
        if (t.action == StackAction::pop && t.top == bottom_)
            throw PreconditionError("bottom symbol popped" + where);
        if (!seen.insert(t).second) continue;
        outgoing_[t.from].push_back(static_cast<int>(transitions_.size()));
        transitions_.push_back(t);
    }
}

std::optional<int> PdaMachine::find_state(std::string_view n) const { return lookup(state_index_, n); }
std::optional<int> PdaMachine::find_input(std::string_view n) const { return lookup(input_index_, n); }
std::optional<int> PdaMachine::find_stack(std::string_view n) const { return lookup(stack_index_, n); }

PdaMachine PdaMachine::with_turn_bound(std::optional<int> k) const {
    return PdaMachine(states_, input_, stack_, bottom_, start_, accepting_, transitions_, k);
}

bool PdaMachine::operator==(const PdaMachine& o) const {
    return states_ == o.states_ && input_ == o.input_ && stack_ == o.stack_ && bottom_ == o.bottom_ &&
           start_ == o.start_ && accepting_ == o.accepting_ && transitions_ == o.transitions_ &&
           turn_bound_ == o.turn_bound_;
}

// ---------------------------------------------------------------------------

int PdaBuilder::state(const std::string& name) {
    auto [it, fresh] = state_index_.emplace(name, static_cast<int>(states_.size()));
    if (fresh) {
        states_.push_back(name);
        accepting_mask_.push_back(0);
    }
    return it->second;
}

int PdaBuilder::input(const std::string& name) {
    auto [it, fresh] = input_index_.emplace(name, static_cast<int>(input_.size()));
    if (fresh) input_.push_back(name);
    return it->second;
}

int PdaBuilder::stack(const std::string& name) {
    auto [it, fresh] = stack_index_.emplace(name, static_cast<int>(stack_.size()));
    if (fresh) stack_.push_back(name);
    return it->second;
}

std::optional<int> PdaBuilder::find_state(const std::string& name) const { return lookup(state_index_, name); }

void PdaBuilder::accept(int q) {
    if (!accepting_mask_[q]) accepting_.push_back(q);
    accepting_mask_[q] = 1;
}

std::size_t PdaBuilder::TransitionHash::operator()(const PdaTransition& t) const {
    std::size_t h = std::size_t(t.from);
    for (int v : {t.read, t.top, t.to, static_cast<int>(t.action), t.pushed}) h = h * 1000003u ^ std::size_t(v + 2);
    return h;
}

void PdaBuilder::add(const PdaTransition& t) {
    if (seen_.emplace(t, 1).second) transitions_.push_back(t);
}

PdaMachine PdaBuilder::finish(std::optional<int> turn_bound) const {
    return PdaMachine(states_, input_, stack_, bottom_, start_, accepting_, transitions_, turn_bound);
}

// ---------------------------------------------------------------------------

namespace {

struct PdaHeaders {
    std::optional<std::vector<std::string>> states, input, stack, accept;
    std::optional<std::string> bottom, start;
    std::optional<int> turns;
    Acceptance acceptance = Acceptance::bottom_only;
};

struct RawTransition {
    std::size_t line;
    std::string from, read, top, to;
    std::vector<std::string> action;  // first token is the keyword
};

bool parse_pda_header(const text::Line& ln, PdaHeaders& h, bool loose) {
    std::string_view rest;
    auto list = [&](std::optional<std::vector<std::string>>& slot) {
        slot = text::split_ws(rest);
        for (const auto& t : *slot) text::require_token(t, ln.number);
    };
    auto single = [&](std::optional<std::string>& slot, const char* what) {
        auto toks = text::split_ws(rest);
        if (toks.size() != 1) throw ParseError(ln.number, std::string(what) + " header needs exactly one name");
        text::require_token(toks[0], ln.number);
        slot = toks[0];
    };
    if (text::header(ln.content, "states", rest)) return list(h.states), true;
    if (text::header(ln.content, "input", rest)) return list(h.input), true;
    if (text::header(ln.content, "stack", rest)) return list(h.stack), true;
    if (text::header(ln.content, "accept", rest)) return list(h.accept), true;
    if (text::header(ln.content, "bottom", rest)) return single(h.bottom, "bottom"), true;
    if (text::header(ln.content, "start", rest)) return single(h.start, "start"), true;
    if (text::header(ln.content, "turns", rest)) {
        try {
            std::size_t used = 0;
            int k = std::stoi(std::string(rest), &used);
            if (used != rest.size() || k < 0) throw std::invalid_argument("turns");
            h.turns = k;
        } catch (const std::exception&) {
            throw ParseError(ln.number, "turns header needs a nonnegative integer");
        }
        return true;
    }
    if (loose && text::header(ln.content, "acceptance", rest)) {
        if (rest == "final") h.acceptance = Acceptance::final_state;
        else if (rest == "bottom") h.acceptance = Acceptance::bottom_only;
        else throw ParseError(ln.number, "acceptance must be 'final' or 'bottom'");
        return true;
    }
    return false;
}

RawTransition parse_transition_line(const text::Line& ln) {
    auto arrow = ln.content.find("->");
    if (arrow == std::string_view::npos) throw ParseError(ln.number, "expected a header or a transition");
    auto lhs = text::split_ws(ln.content.substr(0, arrow));
    auto rhs = text::split_ws(ln.content.substr(arrow + 2));
    if (lhs.size() != 3) throw ParseError(ln.number, "transition needs 'state symbol top' before '->'");
    if (rhs.size() < 2) throw ParseError(ln.number, "transition needs 'state action' after '->'");
    RawTransition r{ln.number, lhs[0], lhs[1], lhs[2], rhs[0], {rhs.begin() + 1, rhs.end()}};
    return r;
}

template <class Index>
int resolve(const Index& idx, const std::string& name, std::size_t line, const char* what) {
    auto it = idx.find(name);
    if (it == idx.end()) throw ParseError(line, std::string("undeclared ") + what + " '" + name + "'");
    return it->second;
}

LoosePda parse_pda_document(std::string_view doc, bool loose) {
    PdaHeaders h;
    std::vector<RawTransition> raw;
    for (const auto& ln : text::lines(doc)) {
        if (parse_pda_header(ln, h, loose)) continue;
        raw.push_back(parse_transition_line(ln));
    }
    if (!h.states) throw ParseError(1, "missing 'states:' header");
    if (!h.stack) throw ParseError(1, "missing 'stack:' header");
    if (!h.bottom) throw ParseError(1, "missing 'bottom:' header");
    if (!h.start) throw ParseError(1, "missing 'start:' header");
    LoosePda m;
    m.states = *h.states;
    m.input = h.input.value_or(std::vector<std::string>{});
    m.stack = *h.stack;
    std::unordered_map<std::string, int> qi, ii, si;
    auto build = [](const std::vector<std::string>& names, std::unordered_map<std::string, int>& idx,
                    const char* what) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (!idx.emplace(names[i], static_cast<int>(i)).second)
                throw ParseError(1, std::string("duplicate ") + what + " '" + names[i] + "'");
    };
    build(m.states, qi, "state");
    build(m.input, ii, "input symbol");
    build(m.stack, si, "stack symbol");
    m.bottom = resolve(si, *h.bottom, 1, "stack symbol");
    m.start = resolve(qi, *h.start, 1, "state");
    for (const auto& a : h.accept.value_or(std::vector<std::string>{}))
        m.accepting.push_back(resolve(qi, a, 1, "state"));
    m.turn_bound = h.turns;
    m.acceptance = h.acceptance;
    for (const auto& r : raw) {
        LooseTransition t;
        t.from = resolve(qi, r.from, r.line, "state");
        t.read = r.read == "eps" ? -1 : resolve(ii, r.read, r.line, "input symbol");
        t.top = resolve(si, r.top, r.line, "stack symbol");
        t.to = resolve(qi, r.to, r.line, "state");
        const std::string& kw = r.action[0];
        std::vector<int> args;
        for (std::size_t i = 1; i < r.action.size(); ++i) args.push_back(resolve(si, r.action[i], r.line, "stack symbol"));
        if (kw == "stay" && args.empty()) {
            t.replacement = {t.top};
        } else if (kw == "pop" && args.empty()) {
            t.replacement = {};
        } else if (kw == "push" && (args.size() == 1 || (loose && !args.empty()))) {
            t.replacement.assign(args.rbegin(), args.rend());
            t.replacement.push_back(t.top);
        } else if (loose && kw == "replace") {
            t.replacement = args;
        } else {
            throw ParseError(r.line, "unknown or malformed action '" + text::join(r.action) + "'");
        }
        if (!loose && t.read >= 0 && kw != "stay")
            throw ParseError(r.line, "reading move must use 'stay' in a normal-form machine");
        m.transitions.push_back(std::move(t));
    }
    return m;
}

enum class LooseKind { stay, pop, push_one, other };

LooseKind classify(const LooseTransition& t) {
    const auto& g = t.replacement;
    if (g.size() == 1 && g[0] == t.top) return LooseKind::stay;
    if (g.empty()) return LooseKind::pop;
    if (g.size() == 2 && g[1] == t.top) return LooseKind::push_one;
    return LooseKind::other;
}

std::string render_action(const LoosePda& m, const LooseTransition& t) {
    switch (classify(t)) {
    case LooseKind::stay: return "stay";
    case LooseKind::pop: return "pop";
    case LooseKind::push_one: return "push " + m.stack[t.replacement[0]];
    case LooseKind::other: break;
    }
    std::string out = "replace";
    for (int s : t.replacement) out += " " + m.stack[s];
    return out;
}

} // namespace

PdaMachine parse_pda(std::string_view doc) {
    LoosePda l = parse_pda_document(doc, false);
    std::vector<PdaTransition> ts;
    for (const auto& t : l.transitions) {
        PdaTransition p{t.from, t.read, t.top, t.to, StackAction::stay, -1};
        switch (classify(t)) {
        case LooseKind::stay: break;
        case LooseKind::pop: p.action = StackAction::pop; break;
        case LooseKind::push_one: p.action = StackAction::push, p.pushed = t.replacement[0]; break;
        case LooseKind::other: throw ParseError(1, "unsupported action in normal-form machine");
        }
        ts.push_back(p);
    }
    return PdaMachine(l.states, l.input, l.stack, l.bottom, l.start, l.accepting, ts, l.turn_bound);
}

LoosePda parse_loose_pda(std::string_view doc) { return parse_pda_document(doc, true); }

LoosePda to_loose(const PdaMachine& m) {
    LoosePda l;
    l.states = m.states();
    l.input = m.input_alphabet();
    l.stack = m.stack_alphabet();
    l.bottom = m.bottom();
    l.start = m.start();
    l.accepting = m.accepting();
    l.turn_bound = m.turn_bound();
    for (const auto& t : m.transitions()) {
        LooseTransition lt{t.from, t.read, t.top, t.to, {}};
        if (t.action == StackAction::stay) lt.replacement = {t.top};
        if (t.action == StackAction::push) lt.replacement = {t.pushed, t.top};
        l.transitions.push_back(lt);
    }
    return l;
}

std::string serialize_loose_pda(const LoosePda& m) {
    std::ostringstream out;
    out << "states: " << text::join(m.states) << "\n";
    out << "input: " << text::join(m.input) << "\n";
    out << "stack: " << text::join(m.stack) << "\n";
    out << "bottom: " << m.stack[m.bottom] << "\n";
    out << "start: " << m.states[m.start] << "\n";
    std::vector<std::string> acc;
    for (int q : m.accepting) acc.push_back(m.states[q]);
    out << "accept: " << text::join(acc) << "\n";
    if (m.turn_bound) out << "turns: " << *m.turn_bound << "\n";
    if (m.acceptance == Acceptance::final_state) out << "acceptance: final\n";
    for (const auto& t : m.transitions) {
        out << m.states[t.from] << ' ' << (t.read < 0 ? std::string("eps") : m.input[t.read]) << ' '
            << m.stack[t.top] << " -> " << m.states[t.to] << ' ' << render_action(m, t) << "\n";
    }
    return out.str();
}

std::string serialize_pda(const PdaMachine& m) { return serialize_loose_pda(to_loose(m)); }

// ---------------------------------------------------------------------------

PdaMachine normalize_pda(const LoosePda& m) {
    const int old_bottom = m.bottom;
    bool touches_bottom = false;
    for (const auto& t : m.transitions) {
        const auto& g = t.replacement;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g[i] == old_bottom && !(i + 1 == g.size() && t.top == old_bottom)) touches_bottom = true;
        if (t.top == old_bottom && (g.empty() || g.back() != old_bottom)) touches_bottom = true;
    }

    PdaBuilder b;
    for (const auto& q : m.states) b.state(q);
    for (const auto& a : m.input) b.input(a);
    for (const auto& z : m.stack) b.stack(z);
    std::unordered_map<std::string, int> taken_states, taken_stack;
    for (std::size_t i = 0; i < m.states.size(); ++i) taken_states[m.states[i]] = int(i);
    for (std::size_t i = 0; i < m.stack.size(); ++i) taken_stack[m.stack[i]] = int(i);
    auto fresh_state = [&](const std::string& base) {
        std::string name = fresh_name(base, taken_states);
        int q = b.state(name);
        taken_states[name] = q;
        return q;
    };

    int bottom = old_bottom;
    int start = m.start;
    if (touches_bottom) {
        bottom = b.stack(fresh_name("Zb", taken_stack));
        int init = fresh_state("init");
        b.push(init, bottom, m.start, old_bottom);
        start = init;
    }
    b.set_bottom(bottom);
    b.set_start(start);
    const int nstack = b.stack_count();

    // Realizes "replace the top by g" from state `from` (top `top`) ending in `to`.
    auto realize = [&](int from, int top, int to, const std::vector<int>& g, const std::string& tag) {
        if (g.size() == 1 && g[0] == top) {
            b.stay(from, -1, top, to);
            return;
        }
        if (g.empty()) {
            b.pop(from, top, to);
            return;
        }
        std::vector<int> to_push;  // in push order, last ends on top
        int cur = from;
        std::optional<int> cur_top = top;
        if (g.back() == top) {
            to_push.assign(g.rbegin() + 1, g.rend());
        } else {
            int mid = fresh_state(tag + "_pop");
            b.pop(from, top, mid);
            cur = mid;
            cur_top.reset();
            to_push.assign(g.rbegin(), g.rend());
        }
        for (std::size_t i = 0; i < to_push.size(); ++i) {
            int next = i + 1 == to_push.size() ? to : fresh_state(tag + "_p" + std::to_string(i + 1));
            if (cur_top) {
                b.push(cur, *cur_top, next, to_push[i]);
            } else {
                for (int z = 0; z < nstack; ++z) b.push(cur, z, next, to_push[i]);
            }
            cur = next;
            cur_top = to_push[i];
        }
    };

    int counter = 0;
    for (const auto& t : m.transitions) {
        const std::string tag = m.states[t.from] + "_t" + std::to_string(counter++);
        const bool is_stay = t.replacement.size() == 1 && t.replacement[0] == t.top;
        if (t.read >= 0 && !is_stay) {
            int mid = fresh_state(tag + "_r");
            b.stay(t.from, t.read, t.top, mid);
            realize(mid, t.top, t.to, t.replacement, tag);
        } else if (t.read >= 0) {
            b.stay(t.from, t.read, t.top, t.to);
        } else {
            realize(t.from, t.top, t.to, t.replacement, tag);
        }
    }

    if (m.acceptance == Acceptance::final_state) {
        int drain = fresh_state("drain");
        for (int f : m.accepting)
            for (int z = 0; z < nstack; ++z) b.stay(f, -1, z, drain);
        for (int z = 0; z < nstack; ++z)
            if (z != bottom) b.pop(drain, z, drain);
        b.accept(drain);
    } else if (touches_bottom) {
        int done = fresh_state("done");
        for (int f : m.accepting) b.pop(f, old_bottom, done);
        b.accept(done);
    } else {
        for (int f : m.accepting) b.accept(f);
    }
    return b.finish(m.turn_bound);
}

} // namespace fturn
