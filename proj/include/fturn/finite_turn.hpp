#pragma once

#include "fturn/grammar.hpp"
#include "fturn/grammar_transform.hpp"
#include "fturn/pda.hpp"
#include "fturn/tree_summaries.hpp"

#include <cstddef>

namespace fturn {

struct FiniteTurnOptions {
    /// Height-bounded tree classes keep the guess tables small; the
    /// yield-bounded classes are available for comparison.
    TreeEnumerationOptions trees{TreeBound::height, 200000};
    /// Maximum number of materialized states.
    std::size_t state_budget = 2000000;
};

/// Figures collected while building; all fields are counts.
struct FiniteTurnStats {
    std::size_t input_var = 0;
    std::size_t input_symb = 0;
    std::size_t binarized_var = 0;  ///< filled by the pipeline only
    std::size_t cnf_var = 0;
    std::size_t short_trees = 0;
    std::size_t partial_trees = 0;
    std::size_t states = 0;
};

/// The (m-1)-turn PDA simulating the pumping procedure for a letter-bounded
/// grammar: guess a short tree, read a_1^{n_1}, repeatedly guess a partial
/// tree whose root is enabled and whose border does not lie below the work
/// context, then drain the counters and the stack.
///
/// The grammar is brought into Chomsky normal form first. The stack alphabet
/// is {Z0, cnt, sep}: a run a_j^p on the stack is p `cnt` marks closed by a
/// `sep`, and the letter of the topmost run is kept in the state. Only states
/// reachable from the initial state are created.
///
/// Throws PreconditionError when L(g) is not contained in a_1*...a_m*, and
/// ResourceError when a budget is exceeded.
PdaMachine build_finite_turn_pda(const Grammar& g, const AlphabetOrder& order,
                                 const FiniteTurnOptions& options = {}, FiniteTurnStats* stats = nullptr);

/// remove_useless, binarize, then build_finite_turn_pda.
PdaMachine cfg_to_finite_turn_pipeline(const Grammar& g, const AlphabetOrder& order,
                                       const FiniteTurnOptions& options = {},
                                       FiniteTurnStats* stats = nullptr);

/// Triple construction: variable [p,Z,q] derives the words read while going
/// from p to q over a stack whose top Z is exposed at both ends and never
/// popped in between. The result is cleaned up into Chomsky normal form.
Grammar pda_to_cfg(const PdaMachine& m);

/// Number of triple variables [p,Z,q] generated before cleanup.
std::size_t pda_to_cfg_triple_count(const PdaMachine& m);

} // namespace fturn
