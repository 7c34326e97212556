#pragma once

#include "fturn/grammar.hpp"
#include "fturn/grammar_transform.hpp"
#include "fturn/nfa.hpp"
#include "fturn/pda.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fturn {

/// CYK membership for a grammar in Chomsky normal form. Throws
/// PreconditionError naming the first production that is not in normal form,
/// or when `w` is empty.
bool cyk_membership(const Grammar& g, const Word& w);

/// Configuration of a PDA run. The stack is listed bottom first.
struct Configuration {
    int state = 0;
    std::size_t position = 0;
    std::vector<int> stack;

    bool operator==(const Configuration&) const = default;
};

/// Sequence of configurations linked by single transitions.
struct ComputationTrace {
    std::vector<Configuration> configurations;
    std::vector<int> transitions;  ///< transition index taken between consecutive configurations

    std::vector<int> heights() const;
    int turns() const;
};

/// Number of turns of a stack-height profile: after merging runs of equal
/// heights, the number of positions that are strictly higher than both
/// neighbours.
int count_turns(const std::vector<int>& heights);

/// Replays `trace` on `m` and `w`. True iff it starts in the initial
/// configuration, every step is a transition of `m`, and it ends accepting.
bool replay_trace(const PdaMachine& m, const Word& w, const ComputationTrace& trace);

/// Work limits for the PDA searches.
struct SearchCaps {
    /// Maximum number of summary facts settled before giving up.
    std::size_t max_steps = 20000000;
    /// When set, computations with more turns are not explored.
    std::optional<int> max_turns;
};

enum class Verdict { accepted, rejected, inconclusive };

std::string to_string(Verdict v);

struct SearchResult {
    Verdict verdict = Verdict::rejected;
    std::optional<int> turns;               ///< minimum over accepting computations
    std::optional<ComputationTrace> trace;  ///< one accepting computation with that many turns
    std::size_t work = 0;                   ///< facts settled
};

/// Decides acceptance exactly by saturating same-level reachability facts
/// (p, Z, i) -> (q, j): from state p at input position i with Z on top, the
/// machine can reach q at position j with the same stack. Facts are settled
/// in order of turn count, so the first accepting fact carries the minimum
/// number of turns. The search is finite for every input; `inconclusive` is
/// returned only when a cap stops it.
SearchResult pda_accepts(const PdaMachine& m, const Word& w, const SearchCaps& caps = {});

/// Same search as pda_accepts; the name documents intent at call sites.
SearchResult min_turns(const PdaMachine& m, const Word& w, const SearchCaps& caps = {});

/// Language membership for any of the three kinds of subject. For grammars
/// the empty word is a member iff the grammar records that it was stripped.
class MembershipOracle {
public:
    explicit MembershipOracle(const Grammar& g);
    explicit MembershipOracle(const PdaMachine& m, SearchCaps caps = {});
    explicit MembershipOracle(const NfaMachine& n);

    Verdict operator()(const Word& w) const { return test_(w); }

private:
    std::function<Verdict(const Word&)> test_;
};

/// Every word a_1^{k_1}...a_m^{k_m} with 0 <= k_i <= bound, ordered
/// lexicographically by exponent vector.
std::vector<Word> box_words(const AlphabetOrder& order, int bound);

/// Every word over `alphabet` of length at most `max_len`, shortest first and
/// lexicographic within a length.
std::vector<Word> all_words(const std::vector<std::string>& alphabet, int max_len);

struct EquivalenceResult {
    bool equal = true;
    std::optional<Word> difference;  ///< first word on which the subjects disagree
    bool in_first = false;
    bool in_second = false;
    std::size_t words_checked = 0;
};

/// Compares membership on `words` in order. Throws InconclusiveError naming
/// the word when a search hits its caps.
EquivalenceResult compare_on(const MembershipOracle& x, const MembershipOracle& y, const std::vector<Word>& words);

/// compare_on over box_words(order, bound).
EquivalenceResult box_equivalence(const MembershipOracle& x, const MembershipOracle& y, const AlphabetOrder& order,
                                  int bound);

/// State count of the minimal complete DFA for the language of a unary NFA.
int minimal_unary_dfa_size(const NfaMachine& n);

/// S -> A1 A1, A_i -> A_{i+1} A_{i+1}, A_n -> a; generates {a^(2^n)}.
Grammar witness_ln(int n);

/// Grammar with n+4m-3 variables for
/// { a_1^(n0+n1) a_2^(n1+n2) ... a_m^(n_{m-1}) : n0 = 2^n, n_i >= 1 }.
Grammar witness_tilde_ln(int n, int m);

/// 1-turn PDA with 2n+1 states and one stack symbol besides Z0 for
/// { a^t : t divisible by n and by n+1 }.
PdaMachine witness_lprime(int n);

} // namespace fturn
