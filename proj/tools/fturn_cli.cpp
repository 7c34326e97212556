// fturn: command-line front end for the bounded-language constructions.
//
// Exit status: 0 success, 1 verification failure (a difference, a rejected
// word, a counterexample), 2 usage or input error, 3 inconclusive (search
// caps or construction budgets hit).

#include "fturn/dot.hpp"
#include "fturn/error.hpp"
#include "fturn/finite_turn.hpp"
#include "fturn/grammar.hpp"
#include "fturn/grammar_transform.hpp"
#include "fturn/nfa.hpp"
#include "fturn/oracle.hpp"
#include "fturn/pda.hpp"
#include "fturn/size_report.hpp"
#include "fturn/turn_reduction.hpp"
#include "fturn/unary.hpp"
#include "fturn/word_bounded.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

using namespace fturn;
using nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, inconclusive = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string alphabet;
    std::string hom_path;
    std::string caps;
    std::string out;
    bool json = false;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

bool has_header(const std::string& doc, const std::string& key) {
    std::istringstream in(doc);
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t");
        if (first != std::string::npos && line.compare(first, key.size(), key) == 0) return true;
    }
    return false;
}

using Subject = std::variant<Grammar, PdaMachine, NfaMachine>;

Subject load(const std::string& path) {
    const std::string doc = read_input(path);
    if (has_header(doc, "bottom:")) return parse_pda(doc);
    if (has_header(doc, "alphabet:")) return parse_nfa(doc);
    return parse_grammar(doc);
}

Grammar load_grammar(const std::string& path) {
    Subject s = load(path);
    if (auto* g = std::get_if<Grammar>(&s)) return std::move(*g);
    throw UsageError("'" + path + "' is not a grammar");
}

PdaMachine load_pda(const std::string& path) {
    Subject s = load(path);
    if (auto* m = std::get_if<PdaMachine>(&s)) return std::move(*m);
    throw UsageError("'" + path + "' is not a pushdown automaton");
}

AlphabetOrder alphabet(const Options& o) {
    if (o.alphabet.empty()) throw UsageError("--alphabet is required");
    AlphabetOrder out;
    std::stringstream s(o.alphabet);
    std::string item;
    while (std::getline(s, item, ','))
        if (!item.empty()) out.push_back(item);
    if (out.empty()) throw UsageError("--alphabet lists no letters");
    return out;
}

Homomorphism hom(const Options& o) {
    if (o.hom_path.empty()) throw UsageError("--hom is required");
    return parse_homomorphism(read_input(o.hom_path));
}

SearchCaps caps(const Options& o) {
    SearchCaps c;
    std::stringstream s(o.caps);
    std::string item;
    while (std::getline(s, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("--caps entry '" + item + "' is not key=value");
        const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
        long long v = 0;
        try {
            std::size_t used = 0;
            v = std::stoll(value, &used);
            if (used != value.size() || v < 0) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw UsageError("--caps value '" + value + "' is not a nonnegative integer");
        }
        if (key == "steps") c.max_steps = static_cast<std::size_t>(v);
        else if (key == "turns") c.max_turns = static_cast<int>(v);
        else if (key == "stack") std::cerr << "note: the stack cap is accepted for compatibility and has no effect\n";
        else throw UsageError("unknown --caps key '" + key + "'");
    }
    return c;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + o.out + "'");
    f << text;
}

void report(const Options& o, const SizeReport& r) {
    std::cerr << (o.json ? to_json(r) + "\n" : to_key_value(r));
}

SizeReport measure_subject(const Subject& s) {
    return std::visit([](const auto& x) { return measure(x); }, s);
}

std::string serialize_subject(const Subject& s) {
    struct {
        std::string operator()(const Grammar& g) const { return serialize_grammar(g); }
        std::string operator()(const PdaMachine& m) const { return serialize_pda(m); }
        std::string operator()(const NfaMachine& n) const { return serialize_nfa(n); }
    } v;
    return std::visit(v, s);
}

void extra(SizeReport& r, const std::string& key, const std::string& value) { r.extra.emplace_back(key, value); }
void extra(SizeReport& r, const std::string& key, std::size_t value) { r.extra.emplace_back(key, std::to_string(value)); }

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

Word word_arg(const std::string& text) { return parse_word(text); }

void print_json(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

// ---- commands -------------------------------------------------------------

int cmd_normalize(const Options& o, const std::string& path) {
    const std::string doc = read_input(path);
    if (has_header(doc, "bottom:")) {
        PdaMachine m = normalize_pda(parse_loose_pda(doc));
        emit(o, serialize_pda(m));
        report(o, measure(m));
    } else {
        Grammar g = to_cnf(parse_grammar(doc));
        emit(o, serialize_grammar(g));
        report(o, measure(g));
    }
    return ok;
}

int cmd_binarize(const Options& o, const std::string& path) {
    Grammar g = load_grammar(path);
    Grammar b = binarize(g);
    emit(o, serialize_grammar(b));
    SizeReport r = measure(b);
    extra(r, "input_symb", symb_count(g));
    report(o, r);
    return ok;
}

int cmd_borders(const Options& o, const std::string& path) {
    Grammar g = load_grammar(path);
    BorderTable t = compute_borders(g, alphabet(o));
    std::ostringstream out;
    ordered_json j = ordered_json::object();
    for (int v = 0; v < g.variable_count(); ++v) {
        const auto& b = t[v];
        if (b) {
            out << g.variables()[v] << ": (" << b->left << "," << b->right << ")\n";
            j[g.variables()[v]] = {b->left, b->right};
        } else {
            out << g.variables()[v] << ": undefined\n";
            j[g.variables()[v]] = nullptr;
        }
    }
    emit(o, o.json ? j.dump(2) + "\n" : out.str());
    return ok;
}

int cmd_check_bounded(const Options& o, const std::string& path) {
    Grammar g = load_grammar(path);
    std::optional<Word> w;
    if (!o.hom_path.empty()) w = check_word_bounded(g, hom(o).words);
    else w = check_letter_bounded(g, alphabet(o));
    if (o.json) {
        ordered_json j;
        j["bounded"] = !w;
        j["counterexample"] = w ? ordered_json(format_word(*w)) : ordered_json(nullptr);
        emit(o, j.dump(2) + "\n");
    } else {
        emit(o, w ? "counterexample: " + format_word(*w) + "\n" : std::string("bounded\n"));
    }
    return w ? failed : ok;
}

int cmd_to_pda(const Options& o, const std::string& path, const std::string& tree_bound) {
    Grammar g = load_grammar(path);
    FiniteTurnOptions fo;
    if (tree_bound == "yield") fo.trees.bound = TreeBound::yield;
    else if (tree_bound != "height") throw UsageError("--tree-bound must be 'height' or 'yield'");
    FiniteTurnStats st;
    PdaMachine m = cfg_to_finite_turn_pipeline(g, alphabet(o), fo, &st);
    emit(o, serialize_pda(m));
    SizeReport r = measure(m);
    extra(r, "input_var", st.input_var);
    extra(r, "input_symb", st.input_symb);
    extra(r, "binarized_var", st.binarized_var);
    extra(r, "cnf_var", st.cnf_var);
    extra(r, "short_trees", st.short_trees);
    extra(r, "partial_trees", st.partial_trees);
    report(o, r);
    return ok;
}

int cmd_pda_to_cfg(const Options& o, const std::string& path) {
    PdaMachine m = load_pda(path);
    Grammar g = pda_to_cfg(m);
    emit(o, serialize_grammar(g));
    SizeReport r = measure(g);
    extra(r, "triples", pda_to_cfg_triple_count(m));
    report(o, r);
    return ok;
}

int cmd_to_nfa(const Options& o, const std::string& path, std::optional<int> turns) {
    PdaMachine m = load_pda(path);
    const int k = turns.value_or(m.turn_bound().value_or(1));
    if (k < 0) throw UsageError("--turns must be nonnegative");
    NfaMachine n = k <= 1 ? one_turn_pda_to_nfa(m.with_turn_bound(std::nullopt)) : kturn_unary_pda_to_nfa(m, k);
    emit(o, serialize_nfa(n));
    SizeReport r = measure(n);
    const SizeReport pm = measure(m);
    extra(r, "pda_size", pm.pda_size);
    extra(r, "trimmed_states", static_cast<std::size_t>(trim_nfa(n).state_count()));
    extra(r, "minimal_dfa_states", static_cast<std::size_t>(minimal_unary_dfa_size(n)));
    if (k <= 1) extra(r, "bound_pda_size_squared_plus_1", pm.pda_size_with_bottom * pm.pda_size_with_bottom + 1);
    report(o, r);
    return ok;
}

int cmd_reduce_turns(const Options& o, const std::string& path, std::optional<int> turns) {
    PdaMachine m = load_pda(path);
    if (!turns && !m.turn_bound()) throw UsageError("--turns is required for a machine without a declared turn bound");
    const int k = turns.value_or(m.turn_bound().value_or(1));
    const AlphabetOrder order = alphabet(o);
    TurnReductionReport rep;
    PdaMachine out = reduce_turns(m, k, order, std::nullopt, &rep);
    emit(o, serialize_pda(out));
    SizeReport r = measure(out);
    extra(r, "grammar_var", rep.grammar_var);
    extra(r, "grammar_symb", rep.grammar_symb);
    extra(r, "plain_variables", rep.grammar.plain_variables);
    extra(r, "unary_variables", rep.grammar.unary_variables);
    extra(r, "paired_variables", rep.grammar.paired_variables);
    extra(r, "one_state_pda_states", rep.pda_states);
    extra(r, "one_state_pda_size", rep.pda_size);
    extra(r, "normalized_size", rep.normalized_size);
    const double mm = static_cast<double>(order.size());
    const double n = static_cast<double>(measure(m).pda_size_with_bottom);
    const int e = 4 * static_cast<int>(std::floor(std::log2(static_cast<double>(k)))) + 8;
    extra(r, "bound", "m^6 n^" + std::to_string(e) + " = " + format_double(std::pow(mm, 6) * std::pow(n, e)));
    report(o, r);
    return ok;
}

int cmd_invhom_grammar(const Options& o, const std::string& path) {
    Grammar g = load_grammar(path);
    InverseHomReport rep;
    Grammar hat = build_inverse_hom_grammar(g, hom(o), &rep);
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    emit(o, serialize_grammar(hat));
    SizeReport r = measure(hat);
    extra(r, "input_symb", rep.input_symb);
    extra(r, "marked_var", rep.marked_var);
    extra(r, "marked_symb", rep.marked_symb);
    extra(r, "symb_ratio", format_double(rep.symb_ratio));
    report(o, r);
    return ok;
}

int cmd_invhom_pda(const Options& o, const std::string& path) {
    PdaMachine m = load_pda(path);
    const Homomorphism h = hom(o);
    PdaMachine out = pda_inverse_hom(m, h);
    emit(o, serialize_pda(out));
    SizeReport r = measure(out);
    std::size_t total = 0;
    for (const auto& w : h.words) total += w.size();
    extra(r, "state_bound", static_cast<std::size_t>(m.state_count()) * (total + 1));
    report(o, r);
    return ok;
}

int cmd_word_to_pda(const Options& o, const std::string& path) {
    Grammar g = load_grammar(path);
    InverseHomReport rep;
    PdaMachine m = word_bounded_cfg_to_pda(g, hom(o), {}, &rep);
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    emit(o, serialize_pda(m));
    SizeReport r = measure(m);
    extra(r, "letter_grammar_symb", rep.result_symb);
    extra(r, "symb_ratio", format_double(rep.symb_ratio));
    report(o, r);
    return ok;
}

int verdict_exit(Verdict v) {
    switch (v) {
    case Verdict::accepted: return ok;
    case Verdict::rejected: return failed;
    case Verdict::inconclusive: return inconclusive;
    }
    return usage;
}

int cmd_member(const Options& o, const std::string& path, const std::string& word) {
    Subject s = load(path);
    const Word w = word_arg(word);
    Verdict v;
    if (auto* g = std::get_if<Grammar>(&s)) {
        if (w.empty()) v = g->epsilon_stripped() ? Verdict::accepted : Verdict::rejected;
        else v = cyk_membership(*g, w) ? Verdict::accepted : Verdict::rejected;
    } else if (auto* m = std::get_if<PdaMachine>(&s)) {
        v = pda_accepts(*m, w, caps(o)).verdict;
    } else {
        v = nfa_accepts(std::get<NfaMachine>(s), w) ? Verdict::accepted : Verdict::rejected;
    }
    if (o.json) print_json({{"word", format_word(w)}, {"verdict", to_string(v)}});
    else std::cout << to_string(v) << "\n";
    return verdict_exit(v);
}

std::string format_configuration(const PdaMachine& m, const Configuration& c, const Word& w) {
    std::string stack;
    for (int z : c.stack) stack += (stack.empty() ? "" : " ") + m.stack_alphabet()[z];
    Word rest(w.begin() + static_cast<std::ptrdiff_t>(c.position), w.end());
    return "(" + m.states()[c.state] + ", " + format_word(rest) + ", " + stack + ")";
}

int cmd_simulate(const Options& o, const std::string& path, const std::string& word, bool trace) {
    PdaMachine m = load_pda(path);
    const Word w = word_arg(word);
    SearchResult r = pda_accepts(m, w, caps(o));
    if (o.json) {
        ordered_json j;
        j["word"] = format_word(w);
        j["verdict"] = to_string(r.verdict);
        j["turns"] = r.turns ? ordered_json(*r.turns) : ordered_json(nullptr);
        j["work"] = r.work;
        if (trace && r.trace) {
            ordered_json steps = ordered_json::array();
            for (const auto& c : r.trace->configurations) steps.push_back(format_configuration(m, c, w));
            j["trace"] = steps;
        }
        print_json(j);
    } else {
        std::cout << to_string(r.verdict);
        if (r.turns) std::cout << " turns=" << *r.turns;
        std::cout << "\n";
        if (trace && r.trace) {
            const auto& cs = r.trace->configurations;
            for (std::size_t i = 0; i < cs.size(); ++i) {
                std::cout << "  " << format_configuration(m, cs[i], w);
                if (i < r.trace->transitions.size()) std::cout << "  [t" << r.trace->transitions[i] << "]";
                std::cout << "\n";
            }
        }
    }
    return verdict_exit(r.verdict);
}

int cmd_min_turns(const Options& o, const std::string& path, const std::string& word) {
    PdaMachine m = load_pda(path);
    const Word w = word_arg(word);
    SearchResult r = min_turns(m, w, caps(o));
    if (o.json) {
        print_json({{"word", format_word(w)},
                    {"verdict", to_string(r.verdict)},
                    {"turns", r.turns ? ordered_json(*r.turns) : ordered_json(nullptr)}});
    } else if (r.verdict == Verdict::inconclusive) {
        std::cout << "inconclusive\n";
    } else {
        std::cout << (r.turns ? std::to_string(*r.turns) : std::string("none")) << "\n";
    }
    return verdict_exit(r.verdict);
}

MembershipOracle oracle_for(const Subject& s, const SearchCaps& c) {
    if (auto* g = std::get_if<Grammar>(&s)) return MembershipOracle(*g);
    if (auto* m = std::get_if<PdaMachine>(&s)) return MembershipOracle(*m, c);
    return MembershipOracle(std::get<NfaMachine>(s));
}

int cmd_equiv(const Options& o, const std::string& first, const std::string& second, int bound) {
    if (bound < 0) throw UsageError("--box must be nonnegative");
    Subject x = load(first), y = load(second);
    const SearchCaps c = caps(o);
    EquivalenceResult r;
    try {
        r = box_equivalence(oracle_for(x, c), oracle_for(y, c), alphabet(o), bound);
    } catch (const InconclusiveError& e) {
        if (o.json) print_json({{"result", "inconclusive"}, {"word", e.word()}});
        else std::cout << "inconclusive on " << e.word() << "\n";
        return inconclusive;
    }
    if (o.json) {
        ordered_json j;
        j["result"] = r.equal ? "equal" : "different";
        j["words_checked"] = r.words_checked;
        if (!r.equal) {
            j["word"] = format_word(*r.difference);
            j["in_first"] = r.in_first;
            j["in_second"] = r.in_second;
        }
        print_json(j);
    } else if (r.equal) {
        std::cout << "equal on " << r.words_checked << " words\n";
    } else {
        std::cout << "different on " << format_word(*r.difference) << " (first "
                  << (r.in_first ? "accepts" : "rejects") << ", second " << (r.in_second ? "accepts" : "rejects")
                  << ")\n";
    }
    return r.equal ? ok : failed;
}

int cmd_witness(const Options& o, const std::string& kind, const std::vector<int>& args) {
    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw UsageError("witness " + kind + " takes " + std::to_string(n) + " integer argument(s)");
        for (int a : args)
            if (a < 1) throw UsageError("witness arguments must be positive");
    };
    Subject s = Grammar({"S"}, {}, 0, {});
    if (kind == "ln") {
        need(1);
        s = witness_ln(args[0]);
    } else if (kind == "tilde") {
        need(2);
        if (args[1] < 2) throw UsageError("witness tilde needs m >= 2");
        s = witness_tilde_ln(args[0], args[1]);
    } else if (kind == "lprime") {
        need(1);
        s = witness_lprime(args[0]);
    } else {
        throw UsageError("unknown witness '" + kind + "' (expected ln, tilde or lprime)");
    }
    emit(o, serialize_subject(s));
    report(o, measure_subject(s));
    return ok;
}

int cmd_sizes(const Options& o, const std::string& path) {
    SizeReport r = measure_subject(load(path));
    emit(o, o.json ? to_json(r) + "\n" : to_key_value(r));
    return ok;
}

int cmd_dot(const Options& o, const std::string& path) {
    Subject s = load(path);
    emit(o, std::visit([](const auto& x) { return export_dot(x); }, s));
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constructions for bounded context-free languages and finite-turn pushdown automata"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--alphabet", opt.alphabet, "Letter order a1,a2,...");
    app.add_option("--hom", opt.hom_path, "Homomorphism file");
    app.add_option("--caps", opt.caps, "Search caps, e.g. steps=1000000,turns=3");
    app.add_option("--out", opt.out, "Write the artifact here instead of stdout");
    app.add_flag("--json", opt.json, "Reports as JSON");

    std::string in1, in2, word, kind, tree_bound = "height";
    std::optional<int> turns;
    int box = 0;
    bool trace = false;
    std::vector<int> wargs;
    int status = ok;
    std::function<int()> run;

    auto input = [&](CLI::App* sub) { sub->add_option("input", in1, "Input file, or - for stdin")->required(); };
    auto simple = [&](const char* name, const char* help, int (*fn)(const Options&, const std::string&)) {
        auto* sub = app.add_subcommand(name, help);
        input(sub);
        sub->callback([&, fn] { run = [&, fn] { return fn(opt, in1); }; });
    };
    simple("normalize", "Grammar to Chomsky normal form, or loose PDA to normal form", cmd_normalize);
    simple("binarize", "Split bodies longer than two symbols", cmd_binarize);
    simple("borders", "Border of every variable (needs --alphabet)", cmd_borders);
    simple("check-bounded", "Check L(g) within a1*...am* (--alphabet) or w1*...wm* (--hom)", cmd_check_bounded);
    simple("pda-to-cfg", "Triple construction", cmd_pda_to_cfg);
    simple("invhom-grammar", "Grammar for the inverse homomorphic image (needs --hom)", cmd_invhom_grammar);
    simple("invhom-pda", "PDA for the inverse homomorphic image (needs --hom)", cmd_invhom_pda);
    simple("word-to-pda", "Word-bounded grammar to (m-1)-turn PDA (needs --hom)", cmd_word_to_pda);
    simple("sizes", "Size report", cmd_sizes);
    simple("dot", "Graphviz rendering", cmd_dot);

    auto* to_pda = app.add_subcommand("to-pda", "Letter-bounded grammar to (m-1)-turn PDA (needs --alphabet)");
    input(to_pda);
    to_pda->add_option("--tree-bound", tree_bound, "height (default) or yield");
    to_pda->callback([&] { run = [&] { return cmd_to_pda(opt, in1, tree_bound); }; });

    auto* to_nfa = app.add_subcommand("to-nfa", "Unary finite-turn PDA to NFA");
    input(to_nfa);
    to_nfa->add_option("--turns", turns, "Turn bound (default: declared, else 1)");
    to_nfa->callback([&] { run = [&] { return cmd_to_nfa(opt, in1, turns); }; });

    auto* reduce = app.add_subcommand("reduce-turns", "k-turn PDA over a1*...am* to (m-1)-turn PDA");
    input(reduce);
    reduce->add_option("--turns", turns, "k (default: declared turn bound)");
    reduce->callback([&] { run = [&] { return cmd_reduce_turns(opt, in1, turns); }; });

    auto* member = app.add_subcommand("member", "Membership of a word (exit 1 when rejected)");
    input(member);
    member->add_option("word", word, "Space-separated symbols, or eps")->required();
    member->callback([&] { run = [&] { return cmd_member(opt, in1, word); }; });

    auto* simulate = app.add_subcommand("simulate", "Run a PDA on a word");
    input(simulate);
    simulate->add_option("word", word, "Space-separated symbols, or eps")->required();
    simulate->add_flag("--trace", trace, "Print an accepting computation");
    simulate->callback([&] { run = [&] { return cmd_simulate(opt, in1, word, trace); }; });

    auto* mt = app.add_subcommand("min-turns", "Fewest turns over accepting computations");
    input(mt);
    mt->add_option("word", word, "Space-separated symbols, or eps")->required();
    mt->callback([&] { run = [&] { return cmd_min_turns(opt, in1, word); }; });

    auto* equiv = app.add_subcommand("equiv", "Compare two subjects on the box (needs --alphabet)");
    equiv->add_option("first", in1)->required();
    equiv->add_option("second", in2)->required();
    equiv->add_option("--box", box, "Largest exponent")->required();
    equiv->callback([&] { run = [&] { return cmd_equiv(opt, in1, in2, box); }; });

    auto* witness = app.add_subcommand("witness", "Witness families: ln N | tilde N M | lprime N");
    witness->add_option("kind", kind)->required();
    witness->add_option("args", wargs)->required();
    witness->callback([&] { run = [&] { return cmd_witness(opt, kind, wargs); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }
    try {
        status = run();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const EmptyLanguageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const InconclusiveError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return inconclusive;
    } catch (const ResourceError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return inconclusive;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    return status;
}
