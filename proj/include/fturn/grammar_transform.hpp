#pragma once

#include "fturn/grammar.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace fturn {

/// Letters a_1..a_m of a letter-bounded language, in order.
using AlphabetOrder = std::vector<std::string>;

/// Drops variables that are unreachable from the start symbol or derive no
/// terminal string. Throws EmptyLanguageError when the start symbol itself is
/// unproductive.
Grammar remove_useless(const Grammar& g);

/// Splits every body longer than two symbols into a chain A -> X1 D1,
/// D1 -> X2 D2, ..., D_{n-2} -> X_{n-1} X_n with fresh variables.
Grammar binarize(const Grammar& g);

/// Replaces unit productions A -> B by the non-unit bodies of B.
Grammar eliminate_unit_productions(const Grammar& g);

/// Merges variables that have the same bodies once merged variables are
/// identified (coarsest stable partition). Each class keeps the name of its
/// first member; duplicate productions collapse.
Grammar merge_equivalent_variables(const Grammar& g);

/// Chomsky normal form: unit elimination, terminal lifting (T_a -> a) inside
/// longer bodies, binarization, then removal of useless variables. A grammar
/// with an empty language comes back with no productions.
Grammar to_cnf(const Grammar& g);

/// Pair (l, r) of 1-based letter indices.
struct Border {
    int left = 1;
    int right = 1;

    bool operator==(const Border&) const = default;
};

/// One entry per variable; std::nullopt where the variable never self-embeds.
using BorderTable = std::vector<std::optional<Border>>;

/// Border of every variable from the letters occurring in the contexts u, v of
/// self-embedding derivations A =>+ u A v. Throws PreconditionError if a context
/// uses more than one letter or a terminal is missing from `order`.
BorderTable compute_borders(const Grammar& g, const AlphabetOrder& order);

/// (l,r) <= (l',r') iff l < l', or l = l' and r >= r'.
std::strong_ordering compare_borders(Border x, Border y);

/// std::nullopt when L(g) is contained in a_1*...a_m*; otherwise a shortest
/// word of L(g) outside that set.
std::optional<Word> check_letter_bounded(const Grammar& g, const AlphabetOrder& order);

/// std::nullopt when L(g) is contained in w_1*...w_m*; otherwise a shortest
/// word of L(g) outside that set.
std::optional<Word> check_word_bounded(const Grammar& g, const std::vector<Word>& words);

/// Maps each terminal of `g` to its 0-based position in `order`; throws
/// PreconditionError when a terminal is missing.
std::vector<int> letter_positions(const Grammar& g, const AlphabetOrder& order);

} // namespace fturn
