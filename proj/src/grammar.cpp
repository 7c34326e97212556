#include "fturn/grammar.hpp"

#include "fturn/error.hpp"
#include "text.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fturn {

std::string format_word(const Word& w) {
    if (w.empty()) return "eps";
    return text::join(w);
}

Word parse_word(std::string_view s) {
    Word w = text::split_ws(s);
    if (w.size() == 1 && w[0] == "eps") w.clear();
    return w;
}

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

struct ProductionHash {
    std::size_t operator()(const Production& p) const {
        std::size_t h = std::hash<int>()(p.head);
        for (const Symbol& s : p.body) h = h * 1000003u ^ (std::size_t(s.index) * 2 + s.terminal);
        return h;
    }
};

} // namespace

Grammar::Grammar(std::vector<std::string> variables, std::vector<std::string> terminals, int start,
                 std::vector<Production> productions, bool epsilon_stripped)
    : variables_(std::move(variables)), terminals_(std::move(terminals)), start_(start),
      epsilon_stripped_(epsilon_stripped) {
    index_names(variables_, variable_index_, "variable");
    index_names(terminals_, terminal_index_, "terminal");
    for (const auto& t : terminals_)
        if (variable_index_.count(t))
            throw PreconditionError("symbol '" + t + "' is both a variable and a terminal");
    if (start_ < 0 || start_ >= variable_count())
        throw PreconditionError("start symbol is not a variable");
    std::unordered_map<Production, bool, ProductionHash> seen;
    by_head_.assign(variables_.size(), {});
    for (auto& p : productions) {
        if (p.head < 0 || p.head >= variable_count())
            throw PreconditionError("production head out of range");
        if (p.body.empty())
            throw PreconditionError("empty body for head '" + variables_[p.head] + "'");
        for (const Symbol& s : p.body) {
            int limit = s.terminal ? terminal_count() : variable_count();
            if (s.index < 0 || s.index >= limit)
                throw PreconditionError("body symbol out of range in production of '" +
                                        variables_[p.head] + "'");
        }
        if (!seen.emplace(p, true).second) continue;
        by_head_[p.head].push_back(static_cast<int>(productions_.size()));
        productions_.push_back(std::move(p));
    }
}

std::optional<int> Grammar::find_variable(std::string_view name) const {
    auto it = variable_index_.find(std::string(name));
    if (it == variable_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Grammar::find_terminal(std::string_view name) const {
    auto it = terminal_index_.find(std::string(name));
    if (it == terminal_index_.end()) return std::nullopt;
    return it->second;
}

bool Grammar::is_cnf() const {
    for (const auto& p : productions_) {
        if (p.body.size() == 1 && p.body[0].terminal) continue;
        if (p.body.size() == 2 && !p.body[0].terminal && !p.body[1].terminal) continue;
        return false;
    }
    return true;
}

bool Grammar::operator==(const Grammar& o) const {
    return variables_ == o.variables_ && terminals_ == o.terminals_ && start_ == o.start_ &&
           productions_ == o.productions_ && epsilon_stripped_ == o.epsilon_stripped_;
}

// ---------------------------------------------------------------------------

int GrammarBuilder::variable(const std::string& name) {
    auto [it, fresh] = variable_index_.emplace(name, static_cast<int>(variables_.size()));
    if (fresh) variables_.push_back(name);
    return it->second;
}

int GrammarBuilder::terminal(const std::string& name) {
    auto [it, fresh] = terminal_index_.emplace(name, static_cast<int>(terminals_.size()));
    if (fresh) terminals_.push_back(name);
    return it->second;
}

std::optional<int> GrammarBuilder::find_variable(const std::string& name) const {
    auto it = variable_index_.find(name);
    if (it == variable_index_.end()) return std::nullopt;
    return it->second;
}

void GrammarBuilder::add(int head, std::vector<Symbol> body) {
    productions_.push_back({head, std::move(body)});
}

Grammar GrammarBuilder::finish() const {
    const std::size_t nv = variables_.size();
    std::vector<char> nullable(nv, 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : productions_) {
            if (nullable[p.head]) continue;
            bool all = std::all_of(p.body.begin(), p.body.end(),
                                   [&](Symbol s) { return !s.terminal && nullable[s.index]; });
            if (all) nullable[p.head] = 1, changed = true;
        }
    }
    std::vector<Production> out;
    for (const auto& p : productions_) {
        std::vector<std::size_t> optional_positions;
        for (std::size_t i = 0; i < p.body.size(); ++i)
            if (!p.body[i].terminal && nullable[p.body[i].index]) optional_positions.push_back(i);
        if (optional_positions.size() > 16)
            throw ResourceError("too many nullable symbols in one production body");
        const std::size_t variants = std::size_t(1) << optional_positions.size();
        // mask bit set = the optional symbol is kept; start with everything kept.
        for (std::size_t mask = variants; mask-- > 0;) {
            Production q{p.head, {}};
            std::size_t k = 0;
            for (std::size_t i = 0; i < p.body.size(); ++i) {
                if (k < optional_positions.size() && optional_positions[k] == i) {
                    if (mask >> k & 1) q.body.push_back(p.body[i]);
                    ++k;
                } else {
                    q.body.push_back(p.body[i]);
                }
            }
            if (q.body.empty()) continue;
            if (q.body.size() == 1 && !q.body[0].terminal && q.body[0].index == q.head) continue;
            out.push_back(std::move(q));
        }
    }
    return Grammar(variables_, terminals_, start_, std::move(out), nullable[start_] != 0);
}

// ---------------------------------------------------------------------------

Grammar parse_grammar(std::string_view doc) {
    struct RawProduction {
        std::size_t line;
        std::string head;
        std::vector<std::string> body;
    };
    std::optional<std::string> start;
    std::optional<std::vector<std::string>> declared_vars, declared_terms;
    bool eps_flag = false;
    std::vector<RawProduction> raw;

    for (const auto& [number, content] : text::lines(doc)) {
        std::string_view rest;
        if (text::header(content, "start", rest)) {
            auto toks = text::split_ws(rest);
            if (toks.size() != 1) throw ParseError(number, "start header needs exactly one symbol");
            text::require_token(toks[0], number);
            start = toks[0];
            continue;
        }
        if (text::header(content, "variables", rest)) {
            declared_vars = text::split_ws(rest);
            for (const auto& t : *declared_vars) text::require_token(t, number);
            continue;
        }
        if (text::header(content, "terminals", rest)) {
            declared_terms = text::split_ws(rest);
            for (const auto& t : *declared_terms) text::require_token(t, number);
            continue;
        }
        if (text::header(content, "epsilon_stripped", rest)) {
            if (rest != "true" && rest != "false")
                throw ParseError(number, "epsilon_stripped must be true or false");
            eps_flag = rest == "true";
            continue;
        }
        auto arrow = content.find("->");
        if (arrow == std::string_view::npos) throw ParseError(number, "expected 'A -> body' or a header");
        auto head_toks = text::split_ws(content.substr(0, arrow));
        if (head_toks.size() != 1) throw ParseError(number, "production needs exactly one head symbol");
        text::require_token(head_toks[0], number);
        std::string_view bodies = content.substr(arrow + 2);
        while (true) {
            auto bar = bodies.find('|');
            auto alt = text::split_ws(bodies.substr(0, bar));
            if (alt.empty())
                throw ParseError(number, "empty body (epsilon production) for head '" + head_toks[0] + "'");
            for (const auto& t : alt) text::require_token(t, number);
            raw.push_back({number, head_toks[0], std::move(alt)});
            if (bar == std::string_view::npos) break;
            bodies = bodies.substr(bar + 1);
        }
    }
    if (!start) throw ParseError(1, "missing 'start:' header");

    std::vector<std::string> vars;
    std::set<std::string> var_set;
    auto add_var = [&](const std::string& v) {
        if (var_set.insert(v).second) vars.push_back(v);
    };
    if (declared_vars) {
        for (const auto& v : *declared_vars) add_var(v);
        for (const auto& p : raw)
            if (!var_set.count(p.head))
                throw ParseError(p.line, "undeclared variable '" + p.head + "'");
        if (!var_set.count(*start)) throw ParseError(1, "start symbol '" + *start + "' is not declared");
    } else {
        add_var(*start);
        for (const auto& p : raw) add_var(p.head);
    }

    std::vector<std::string> terms;
    std::set<std::string> term_set;
    if (declared_terms) {
        for (const auto& t : *declared_terms)
            if (term_set.insert(t).second) terms.push_back(t);
        for (const auto& p : raw)
            for (const auto& s : p.body)
                if (!var_set.count(s) && !term_set.count(s))
                    throw ParseError(p.line, "undeclared symbol '" + s + "'");
    } else {
        for (const auto& p : raw)
            for (const auto& s : p.body)
                if (!var_set.count(s) && term_set.insert(s).second) terms.push_back(s);
    }
    for (const auto& t : terms)
        if (var_set.count(t)) throw ParseError(1, "symbol '" + t + "' declared as both variable and terminal");

    std::unordered_map<std::string, int> vi, ti;
    for (std::size_t i = 0; i < vars.size(); ++i) vi[vars[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < terms.size(); ++i) ti[terms[i]] = static_cast<int>(i);
    std::vector<Production> prods;
    for (const auto& p : raw) {
        Production q{vi.at(p.head), {}};
        for (const auto& s : p.body) {
            auto it = vi.find(s);
            q.body.push_back(it != vi.end() ? Symbol::var(it->second) : Symbol::term(ti.at(s)));
        }
        prods.push_back(std::move(q));
    }
    return Grammar(std::move(vars), std::move(terms), vi.at(*start), std::move(prods), eps_flag);
}

std::string serialize_grammar(const Grammar& g) {
    std::ostringstream out;
    out << "start: " << g.start_name() << "\n";
    out << "variables: " << text::join(g.variables()) << "\n";
    out << "terminals: " << text::join(g.terminals()) << "\n";
    if (g.epsilon_stripped()) out << "epsilon_stripped: true\n";
    for (const auto& p : g.productions()) {
        out << g.variables()[p.head] << " ->";
        for (const Symbol& s : p.body) out << ' ' << g.name(s);
        out << "\n";
    }
    return out.str();
}

std::size_t symb_count(const Grammar& g) {
    std::size_t total = 0;
    for (const auto& p : g.productions()) total += 2 + p.body.size();
    return total;
}

} // namespace fturn
