#pragma once

#include "fturn/nfa.hpp"
#include "fturn/pda.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fturn {

/// Segment language L(from, top, to): words processed by computations that
/// start in `from` and end in `to` with the same stack height and `top` on
/// top at both ends. With a budget j only sequences of strong computations
/// with at most j turns in total are covered.
struct SegmentQuery {
    int from = 0;
    int top = 0;
    int to = 0;
    std::optional<int> budget;
};

/// NFA over states Q x Gamma x Q for the 1-turn segment language. The result
/// has exactly |Q|^2 |Gamma| states; trim_nfa removes the useless ones.
NfaMachine one_turn_segment_nfa(const PdaMachine& m, const SegmentQuery& q);

/// Adds a fresh start state with ε-moves into (q0, Z0, qf) for every accepting
/// qf. Requires a unary machine whose declared turn bound, if any, is at most 1.
NfaMachine one_turn_pda_to_nfa(const PdaMachine& m);

struct KturnStats {
    std::size_t states = 0;          ///< reachable sentential states
    std::size_t transitions = 0;
    int max_sequence_length = 0;     ///< longest sentential state seen
    int max_budget_sum = 0;          ///< largest sum of remaining budgets in one state
};

/// Simulates the turn-indexed segment grammar on sentential forms. A state
/// lists the pending variables [p,Z,q,i]; the first one is being derived.
/// After a split the part with fewer remaining turns is derived first and the
/// other is parked in front of the older ones, which keeps every state at most
/// floor(log2 j)+1 long. The empty sequence is the only accepting state.
/// States are created on demand; ResourceError is thrown when more than
/// `state_budget` exist.
class KturnSegmentExplorer {
public:
    explicit KturnSegmentExplorer(const PdaMachine& m, std::size_t state_budget = 2000000);
    ~KturnSegmentExplorer();
    KturnSegmentExplorer(KturnSegmentExplorer&&) noexcept;
    KturnSegmentExplorer& operator=(KturnSegmentExplorer&&) noexcept;

    /// State for the single pending variable of `q`; the budget must be present.
    int start(const SegmentQuery& q);
    /// Outgoing moves of `state`, computed on first request.
    const std::vector<NfaTransition>& successors(int state);
    bool accepting(int state) const;
    std::string name(int state) const;
    int state_count() const;
    const KturnStats& stats() const;

    /// Expands every state reachable from the ones created so far and returns
    /// the NFA over them, plus `extra_names` states and `extra` moves.
    NfaMachine explore_all(int start_state, const std::vector<NfaTransition>& extra,
                           const std::vector<std::string>& extra_names);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One NFA serves all queries: `starts[k]` is the state for `queries[k]`
/// (the NFA's own start is the first query's). Throws ResourceError when more
/// than `state_budget` states are reachable.
struct SharedSegmentNfa {
    NfaMachine nfa;
    std::vector<int> starts;
    KturnStats stats;
};

SharedSegmentNfa kturn_segment_nfas(const PdaMachine& m, const std::vector<SegmentQuery>& queries,
                                    std::size_t state_budget = 2000000);

/// Single-query form of kturn_segment_nfas; the budget must be present.
NfaMachine kturn_segment_nfa(const PdaMachine& m, const SegmentQuery& q, KturnStats* stats = nullptr);

/// Fresh start state with ε-moves into [q0, Z0, qf, k] for each accepting qf.
NfaMachine kturn_unary_pda_to_nfa(const PdaMachine& m, int k, KturnStats* stats = nullptr);

/// Copy of `m` over the one-letter alphabet {letter}: reading moves on other
/// letters are dropped, everything else is kept.
PdaMachine restrict_to_letter(const PdaMachine& m, int letter);

} // namespace fturn
