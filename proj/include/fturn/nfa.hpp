#pragma once

#include "fturn/grammar.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fturn {

struct NfaTransition {
    int from = 0;
    int symbol = -1;  ///< alphabet index, or -1 for ε
    int to = 0;

    auto operator<=>(const NfaTransition&) const = default;
};

/// Nondeterministic finite automaton with ε-moves.
class NfaMachine {
public:
    NfaMachine(std::vector<std::string> states, std::vector<std::string> alphabet, int start,
               std::vector<int> accepting, std::vector<NfaTransition> transitions);

    const std::vector<std::string>& states() const { return states_; }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    int start() const { return start_; }
    const std::vector<int>& accepting() const { return accepting_; }
    bool is_accepting(int q) const { return accepting_mask_[q] != 0; }
    const std::vector<NfaTransition>& transitions() const { return transitions_; }
    const std::vector<std::vector<int>>& outgoing() const { return outgoing_; }
    int state_count() const { return static_cast<int>(states_.size()); }
    std::optional<int> find_symbol(std::string_view name) const;
    bool operator==(const NfaMachine& o) const;

private:
    std::vector<std::string> states_, alphabet_;
    int start_;
    std::vector<int> accepting_;
    std::vector<char> accepting_mask_;
    std::vector<NfaTransition> transitions_;
    std::vector<std::vector<int>> outgoing_;
    std::unordered_map<std::string, int> symbol_index_;
};

/// Text format:
///
///     states: s t
///     alphabet: a
///     start: s
///     accept: t
///     s a -> t
///     t eps -> s
NfaMachine parse_nfa(std::string_view text);
std::string serialize_nfa(const NfaMachine& n);

/// ε-closure of a set of states, returned sorted.
std::vector<int> epsilon_closure(const NfaMachine& n, std::vector<int> states);

/// Membership by subset simulation. Symbols outside the alphabet reject.
bool nfa_accepts(const NfaMachine& n, const Word& w);

/// Keeps the states that are reachable from the start and can reach an
/// accepting state (the start state is always kept).
NfaMachine trim_nfa(const NfaMachine& n);

} // namespace fturn
