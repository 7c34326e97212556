#pragma once

#include "fturn/finite_turn.hpp"
#include "fturn/grammar.hpp"
#include "fturn/pda.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fturn {

/// phi(a_i) = w_i for fresh letters a_1..a_m.
struct Homomorphism {
    std::vector<std::string> letters;  ///< a_1..a_m
    std::vector<Word> words;           ///< w_1..w_m, each nonempty

    int size() const { return static_cast<int>(words.size()); }
    /// a_1^{k_1}...a_m^{k_m} -> w_1^{k_1}...w_m^{k_m}; throws on unknown letters.
    Word expand(const Word& letters_word) const;
    /// Symbols of w_1..w_m in order of first occurrence.
    std::vector<std::string> target_alphabet() const;
};

/// One definition per line, `a1 = ab` or `a1 = x1 x2`: a single token is split
/// into characters, several tokens are taken as symbols. Blank lines and
/// `#` comments are skipped. Throws ParseError on malformed lines, repeated
/// letters, or an empty word.
Homomorphism parse_homomorphism(std::string_view text);
/// Throws PreconditionError for an image that is a single symbol longer than
/// one character, since the format would split it.
std::string serialize_homomorphism(const Homomorphism& h);

/// Letters a1..am with the given words.
Homomorphism make_homomorphism(const std::vector<Word>& words);

/// Marked grammar over variables [A,i,l,r,j], named `A_i_l_r_j` with l and r
/// counted from 1. Requires g in Chomsky normal form with L(g) contained in
/// w_1*...w_m*; only variables reachable from the start [S,|w_1|,1,m,0] are
/// kept.
Grammar build_marked_grammar(const Grammar& g, const Homomorphism& h);

struct InverseHomReport {
    std::size_t input_symb = 0;
    std::size_t marked_var = 0;
    std::size_t marked_symb = 0;
    std::size_t result_var = 0;
    std::size_t result_symb = 0;
    double symb_ratio = 0;  ///< result_symb / input_symb
    std::vector<std::string> warnings;
};

/// Grammar over a_1..a_m for phi^-1(L(g)): each terminal rule of the marked
/// grammar at position 1 of w_l produces a_l, at later positions ε; then ε-
/// and unit-productions and useless variables are removed.
Grammar build_inverse_hom_grammar(const Grammar& g, const Homomorphism& h, InverseHomReport* report = nullptr);

/// Replaces every move reading a_i by a chain of |w_i| moves reading w_i
/// through fresh states. The turn bound is kept.
PdaMachine expand_letters(const PdaMachine& m, const Homomorphism& h);

/// build_inverse_hom_grammar, cfg_to_finite_turn_pipeline over a_1..a_m, then
/// expand_letters. The result declares m-1 turns.
PdaMachine word_bounded_cfg_to_pda(const Grammar& g, const Homomorphism& h, const FiniteTurnOptions& options = {},
                                   InverseHomReport* report = nullptr);

/// Machine over a_1..a_m accepting the sorted letter words whose expansion
/// m accepts. A state is (q, init) before the first letter, or (q, i, pos):
/// the last letter read was a_i and w_i[pos..] is still buffered (pos = 0
/// means the buffer is empty). Reads of m drain the buffer; on an empty buffer
/// a letter a_j with j >= i is read and w_j refills it. At most
/// |Q| (sum |w_i| + 1) states; only reachable ones are created.
PdaMachine pda_inverse_hom(const PdaMachine& m, const Homomorphism& h);

} // namespace fturn
