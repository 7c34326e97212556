#pragma once

#include "fturn/grammar.hpp"
#include "fturn/grammar_transform.hpp"
#include "fturn/pda.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace fturn {

/// Element of Pi(m): a single letter (first == last) or a pair first < last.
/// Letters are 0-based positions in the alphabet order.
struct PiElement {
    int first = 0;
    int last = 0;

    bool is_letter() const { return first == last; }
    auto operator<=>(const PiElement&) const = default;
};

/// All (m^2+m)/2 elements, letters first, then pairs in lexicographic order.
std::vector<PiElement> pi_elements(int m);

/// (pi_l(w), pi_r(w)) as 0-based letter positions. Throws PreconditionError
/// for the empty word, a letter outside `order`, or an unsorted word.
std::pair<int, int> pi_projections(const Word& w, const AlphabetOrder& order);

struct ReductionStats {
    std::size_t plain_variables = 0;   ///< [p,Z,q,i,ab] with a < b
    std::size_t unary_variables = 0;   ///< right-linear variables from the segment NFAs
    std::size_t paired_variables = 0;  ///< (unary, plain) and (plain, unary) pairs
    std::size_t productions = 0;       ///< before ε-elimination
    std::vector<std::size_t> nfa_states;  ///< segment NFA size per letter
};

/// Grammar for T(m) built from turn-indexed triples tagged with Pi(m). Unary
/// variables are expanded through the right-linear grammars of the k-turn
/// segment NFAs of `m` restricted to one letter; paired variables derive their
/// unary side first. Splits keep the tags sorted (the left part's last letter
/// does not exceed the right part's first letter), so a sentential form never
/// holds more than m-1 variables that are not unary. The result is ε-free and
/// records whether ε was stripped; useless variables are removed.
///
/// `turn_budget` defaults to k.
Grammar build_reduction_grammar(const PdaMachine& m, int k, const AlphabetOrder& order,
                                std::optional<int> turn_budget = std::nullopt, ReductionStats* stats = nullptr);

/// PDA for L(g) whose finite control caches the topmost grammar symbol: a
/// production X -> t1..tk Y R1..Rn reads t1..tk, pushes Rn..R1 and continues
/// with Y cached, so expanding a variable never pops. Popped terminals are
/// read at once. Accepts with only the bottom symbol left.
PdaMachine grammar_to_one_state_pda(const Grammar& g);

struct TurnReductionReport {
    ReductionStats grammar;
    std::size_t grammar_var = 0;
    std::size_t grammar_symb = 0;
    std::size_t pda_states = 0;            ///< one-state construction
    std::size_t pda_size = 0;
    std::size_t normalized_states = 0;     ///< after normalize_pda
    std::size_t normalized_size = 0;
};

/// build_reduction_grammar, grammar_to_one_state_pda, then normalize_pda; the
/// result declares m-1 turns.
PdaMachine reduce_turns(const PdaMachine& m, int k, const AlphabetOrder& order,
                        std::optional<int> turn_budget = std::nullopt, TurnReductionReport* report = nullptr);

} // namespace fturn
