#include "fturn/word_bounded.hpp"

#include "fturn/error.hpp"
#include "fturn/grammar_transform.hpp"
#include "text.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

namespace fturn {

Word Homomorphism::expand(const Word& letters_word) const {
    Word out;
    for (const auto& s : letters_word) {
        auto it = std::find(letters.begin(), letters.end(), s);
        if (it == letters.end()) throw PreconditionError("'" + s + "' is not a letter of the homomorphism");
        const Word& w = words[it - letters.begin()];
        out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

std::vector<std::string> Homomorphism::target_alphabet() const {
    std::vector<std::string> out;
    for (const auto& w : words)
        for (const auto& s : w)
            if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    return out;
}

Homomorphism parse_homomorphism(std::string_view doc) {
    Homomorphism h;
    for (const auto& line : text::lines(doc)) {
        auto eq = line.content.find('=');
        if (eq == std::string_view::npos) throw ParseError(line.number, "expected 'letter = word'");
        std::string letter(text::trim(line.content.substr(0, eq)));
        if (!text::is_token(letter)) throw ParseError(line.number, "invalid letter name '" + letter + "'");
        if (letter == "eps") throw ParseError(line.number, "'eps' is reserved");
        if (std::find(h.letters.begin(), h.letters.end(), letter) != h.letters.end())
            throw ParseError(line.number, "letter '" + letter + "' defined twice");
        auto tokens = text::split_ws(line.content.substr(eq + 1));
        Word w;
        if (tokens.size() == 1 && tokens[0] != "eps") {
            for (char c : tokens[0]) w.emplace_back(1, c);
        } else {
            w = tokens;
        }
        if (w.empty() || (w.size() == 1 && w[0] == "eps")) throw ParseError(line.number, "image of '" + letter + "' is empty");
        for (const auto& s : w)
            if (!text::is_token(s) || s == "eps") throw ParseError(line.number, "invalid symbol '" + s + "'");
        h.letters.push_back(letter);
        h.words.push_back(std::move(w));
    }
    if (h.letters.empty()) throw ParseError(1, "homomorphism defines no letters");
    return h;
}

std::string serialize_homomorphism(const Homomorphism& h) {
    std::ostringstream out;
    for (int i = 0; i < h.size(); ++i) {
        bool single = std::all_of(h.words[i].begin(), h.words[i].end(), [](const std::string& s) { return s.size() == 1; });
        if (!single && h.words[i].size() == 1)
            throw PreconditionError("image of '" + h.letters[i] + "' is one multi-character symbol, which the format cannot express");
        out << h.letters[i] << " =";
        if (single) {
            out << ' ';
            for (const auto& s : h.words[i]) out << s;
        } else {
            for (const auto& s : h.words[i]) out << ' ' << s;
        }
        out << '\n';
    }
    return out.str();
}

Homomorphism make_homomorphism(const std::vector<Word>& words) {
    Homomorphism h;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i].empty()) throw PreconditionError("homomorphism images must be nonempty");
        h.letters.push_back("a" + std::to_string(i + 1));
        h.words.push_back(words[i]);
    }
    if (h.words.empty()) throw PreconditionError("homomorphism needs at least one word");
    return h;
}

namespace {

void check_hom(const Homomorphism& h) {
    if (h.words.empty() || h.letters.size() != h.words.size())
        throw PreconditionError("homomorphism needs one nonempty word per letter");
    for (const auto& w : h.words)
        if (w.empty()) throw PreconditionError("homomorphism images must be nonempty");
}

void check_input(const Grammar& g, const Homomorphism& h) {
    check_hom(h);
    if (!g.is_cnf()) throw PreconditionError("grammar must be in Chomsky normal form");
    if (auto w = check_word_bounded(g, h.words))
        throw PreconditionError("grammar generates '" + format_word(*w) + "', which is not in w_1*...w_m*");
}

// Variables [A,i,l,r,j] generated on demand from the start symbol.
class MarkedBuilder {
public:
    MarkedBuilder(const Grammar& g, const Homomorphism& h, bool hat) : g_(g), h_(h), hat_(hat) {
        if (hat)
            for (const auto& a : h.letters) gb_.terminal(a);
        else
            for (const auto& t : g.terminals()) gb_.terminal(t);
    }

    GrammarBuilder& run() {
        const int m = h_.size();
        gb_.set_start(var({g_.start(), len(0), 0, m - 1, 0}));
        while (!work_.empty()) {
            auto [id, v] = work_.front();
            work_.pop_front();
            expand(id, v);
        }
        return gb_;
    }

private:
    using Key = std::array<int, 5>;  // A, i, l, r, j

    int len(int l) const { return static_cast<int>(h_.words[l].size()); }

    int var(const Key& k) {
        auto it = index_.find(k);
        if (it != index_.end()) return it->second;
        const int id = gb_.variable(g_.variables()[k[0]] + "_" + std::to_string(k[1]) + "_" + std::to_string(k[2] + 1) +
                                    "_" + std::to_string(k[3] + 1) + "_" + std::to_string(k[4]));
        index_.emplace(k, id);
        work_.push_back({id, k});
        return id;
    }

    void expand(int id, const Key& key) {
        const auto [a, i, l, r, j] = key;
        for (int pi : g_.productions_by_head()[a]) {
            const Production& p = g_.productions()[pi];
            if (p.body.size() == 1) {
                // (1) terminal rules at matching word positions
                if (l != r || j < 1 || i != j - 1) continue;
                const std::string& sym = g_.terminals()[p.body[0].index];
                if (h_.words[l][j - 1] != sym) continue;
                if (!hat_) gb_.add(id, {p.body[0]});
                else if (j == 1) gb_.add(id, {Symbol::term(l)});
                else gb_.add(id, {});
                continue;
            }
            // (2) binary splits
            const int b = p.body[0].index, c = p.body[1].index;
            for (int hh = l; hh <= r; ++hh)
                for (int k = 0; k <= len(hh); ++k)
                    gb_.add(id, {Symbol::var(var({b, i, l, hh, k})), Symbol::var(var({c, k, hh, r, j}))});
        }
        if (j == 0) {
            gb_.add(id, {Symbol::var(var({a, i, l, r, len(r)}))});                                   // (3)
            for (int hh = l; hh < r; ++hh) gb_.add(id, {Symbol::var(var({a, i, l, hh, 0}))});         // (5)
        }
        if (i == len(l)) {
            gb_.add(id, {Symbol::var(var({a, 0, l, r, j}))});                                        // (4)
            for (int hh = l + 1; hh <= r; ++hh) gb_.add(id, {Symbol::var(var({a, len(hh), hh, r, j}))});  // (6)
        }
    }

    const Grammar& g_;
    const Homomorphism& h_;
    bool hat_;
    GrammarBuilder gb_;
    std::map<Key, int> index_;
    std::deque<std::pair<int, Key>> work_;
};

Grammar cleaned(const Grammar& g, const std::vector<std::string>& terminals) {
    try {
        return remove_useless(g);
    } catch (const EmptyLanguageError&) {
        return Grammar({g.start_name()}, terminals, 0, {}, g.epsilon_stripped());
    }
}

} // namespace

Grammar build_marked_grammar(const Grammar& g, const Homomorphism& h) {
    check_input(g, h);
    MarkedBuilder b(g, h, false);
    Grammar out = b.run().finish();
    return cleaned(Grammar(out.variables(), out.terminals(), out.start(), out.productions(), g.epsilon_stripped()),
                   g.terminals());
}

Grammar build_inverse_hom_grammar(const Grammar& g, const Homomorphism& h, InverseHomReport* report) {
    check_input(g, h);
    MarkedBuilder marked(g, h, false);
    const Grammar marked_g = marked.run().finish();
    MarkedBuilder b(g, h, true);
    const Grammar raw = b.run().finish();
    const Grammar flagged(raw.variables(), raw.terminals(), raw.start(), raw.productions(),
                          raw.epsilon_stripped() || g.epsilon_stripped());
    Grammar out = cleaned(merge_equivalent_variables(eliminate_unit_productions(flagged)), h.letters);
    if (report) {
        InverseHomReport r;
        r.input_symb = symb_count(g);
        r.marked_var = static_cast<std::size_t>(marked_g.variable_count());
        r.marked_symb = symb_count(marked_g);
        r.result_var = static_cast<std::size_t>(out.variable_count());
        r.result_symb = symb_count(out);
        r.symb_ratio = r.input_symb ? double(r.result_symb) / double(r.input_symb) : 0.0;
        if (out.productions().empty())
            r.warnings.push_back(out.epsilon_stripped() ? "inverse image is {eps} only" : "inverse image is empty");
        *report = std::move(r);
    }
    return out;
}

PdaMachine expand_letters(const PdaMachine& m, const Homomorphism& h) {
    check_hom(h);
    std::vector<int> letter_of(m.input_count());
    for (int x = 0; x < m.input_count(); ++x) {
        auto it = std::find(h.letters.begin(), h.letters.end(), m.input_alphabet()[x]);
        if (it == h.letters.end())
            throw PreconditionError("input letter '" + m.input_alphabet()[x] + "' has no image");
        letter_of[x] = static_cast<int>(it - h.letters.begin());
    }
    std::unordered_map<std::string, int> taken;
    PdaBuilder pb;
    for (const auto& s : m.states()) taken.emplace(s, pb.state(s));
    for (const auto& s : h.target_alphabet()) pb.input(s);
    for (const auto& z : m.stack_alphabet()) pb.stack(z);
    pb.set_bottom(m.bottom());
    pb.set_start(m.start());
    for (int q : m.accepting()) pb.accept(q);
    for (std::size_t ti = 0; ti < m.transitions().size(); ++ti) {
        const PdaTransition& t = m.transitions()[ti];
        if (t.read < 0) {
            pb.add(t);
            continue;
        }
        const Word& w = h.words[letter_of[t.read]];
        int cur = t.from;
        for (std::size_t k = 0; k < w.size(); ++k) {
            int next = t.to;
            if (k + 1 < w.size()) {
                std::string name = fresh_name("x" + std::to_string(ti) + "_" + std::to_string(k + 1), taken);
                next = pb.state(name);
                taken.emplace(name, next);
            }
            pb.stay(cur, pb.input(w[k]), t.top, next);
            cur = next;
        }
    }
    return pb.finish(m.turn_bound());
}

PdaMachine word_bounded_cfg_to_pda(const Grammar& g, const Homomorphism& h, const FiniteTurnOptions& options,
                                   InverseHomReport* report) {
    Grammar hat = build_inverse_hom_grammar(g, h, report);
    PdaMachine letters = cfg_to_finite_turn_pipeline(hat, h.letters, options);
    return expand_letters(letters, h).with_turn_bound(h.size() - 1);
}

PdaMachine pda_inverse_hom(const PdaMachine& m, const Homomorphism& h) {
    check_hom(h);
    const int nl = h.size();
    // input index of each symbol of each word, -2 when m cannot read it
    std::vector<std::vector<int>> word_syms(nl);
    for (int i = 0; i < nl; ++i)
        for (const auto& s : h.words[i]) word_syms[i].push_back(m.find_input(s).value_or(-2));

    // state key: (q, i, pos) with i = -1 for init
    using Key = std::array<int, 3>;
    std::map<Key, int> index;
    std::deque<Key> work;
    PdaBuilder pb;
    for (const auto& a : h.letters) pb.input(a);
    for (const auto& z : m.stack_alphabet()) pb.stack(z);
    pb.set_bottom(m.bottom());
    auto state = [&](const Key& k) {
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        const std::string& q = m.states()[k[0]];
        const std::string name =
            k[1] < 0 ? q + "_init" : q + "_" + std::to_string(k[1] + 1) + "_" + std::to_string(k[2]);
        const int id = pb.state(name);
        index.emplace(k, id);
        work.push_back(k);
        if (k[2] == 0 && m.is_accepting(k[0])) pb.accept(id);
        return id;
    };
    pb.set_start(state({m.start(), -1, 0}));
    while (!work.empty()) {
        const Key k = work.front();
        work.pop_front();
        const int from = index.at(k);
        const auto [q, i, pos] = k;
        for (int ti : m.outgoing()[q]) {
            const PdaTransition& t = m.transitions()[ti];
            if (t.read < 0) {
                pb.add({from, -1, t.top, state({t.to, i, pos}), t.action, t.pushed});
                continue;
            }
            if (pos > 0) {
                if (word_syms[i][pos] != t.read) continue;
                const int next = pos + 1 == static_cast<int>(word_syms[i].size()) ? 0 : pos + 1;
                pb.stay(from, -1, t.top, state({t.to, i, next}));
                continue;
            }
            for (int j = std::max(i, 0); j < nl; ++j) {
                if (word_syms[j][0] != t.read) continue;
                const int next = word_syms[j].size() == 1 ? 0 : 1;
                pb.stay(from, j, t.top, state({t.to, j, next}));
            }
        }
    }
    return pb.finish(m.turn_bound());
}

} // namespace fturn
