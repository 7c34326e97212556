#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fturn {

enum class StackAction { stay, pop, push };

/// One move of a normal-form PDA. `read` is an input-symbol index or -1 for
/// an ε-move; `pushed` is meaningful only for StackAction::push.
struct PdaTransition {
    int from = 0;
    int read = -1;
    int top = 0;
    int to = 0;
    StackAction action = StackAction::stay;
    int pushed = -1;

    auto operator<=>(const PdaTransition&) const = default;
};

/// Pushdown automaton in normal form: the bottom symbol is never pushed or
/// popped, reading moves leave the stack alone, and each push adds exactly one
/// symbol. A word is accepted when the machine is in an accepting state with
/// the input exhausted and only the bottom symbol on the stack.
class PdaMachine {
public:
    PdaMachine(std::vector<std::string> states, std::vector<std::string> input,
               std::vector<std::string> stack, int bottom, int start, std::vector<int> accepting,
               std::vector<PdaTransition> transitions, std::optional<int> turn_bound = std::nullopt);

    const std::vector<std::string>& states() const { return states_; }
    const std::vector<std::string>& input_alphabet() const { return input_; }
    const std::vector<std::string>& stack_alphabet() const { return stack_; }
    int bottom() const { return bottom_; }
    int start() const { return start_; }
    const std::vector<int>& accepting() const { return accepting_; }
    bool is_accepting(int q) const { return accepting_mask_[q] != 0; }
    const std::vector<PdaTransition>& transitions() const { return transitions_; }
    std::optional<int> turn_bound() const { return turn_bound_; }

    int state_count() const { return static_cast<int>(states_.size()); }
    int stack_count() const { return static_cast<int>(stack_.size()); }
    int input_count() const { return static_cast<int>(input_.size()); }

    std::optional<int> find_state(std::string_view name) const;
    std::optional<int> find_input(std::string_view name) const;
    std::optional<int> find_stack(std::string_view name) const;

    /// Transition indices leaving each state.
    const std::vector<std::vector<int>>& outgoing() const { return outgoing_; }

    PdaMachine with_turn_bound(std::optional<int> k) const;
    bool operator==(const PdaMachine& o) const;

private:
    std::vector<std::string> states_, input_, stack_;
    int bottom_, start_;
    std::vector<int> accepting_;
    std::vector<char> accepting_mask_;
    std::vector<PdaTransition> transitions_;
    std::optional<int> turn_bound_;
    std::unordered_map<std::string, int> state_index_, input_index_, stack_index_;
    std::vector<std::vector<int>> outgoing_;
};

/// General move of a loosely specified PDA: the top symbol is replaced by
/// `replacement` (listed top first; empty means pop). Reading moves may change
/// the stack.
struct LooseTransition {
    int from = 0;
    int read = -1;
    int top = 0;
    int to = 0;
    std::vector<int> replacement;

    auto operator<=>(const LooseTransition&) const = default;
};

enum class Acceptance {
    bottom_only,  ///< accepting state, input exhausted, only the bottom symbol left
    final_state,  ///< accepting state, input exhausted, any stack content
};

/// PDA without the normal-form restrictions; input to normalize_pda.
struct LoosePda {
    std::vector<std::string> states, input, stack;
    int bottom = 0;
    int start = 0;
    std::vector<int> accepting;
    std::vector<LooseTransition> transitions;
    std::optional<int> turn_bound;
    Acceptance acceptance = Acceptance::bottom_only;
};

/// Normal-form text format:
///
///     states: q0 q1
///     input: a
///     stack: Z0 A
///     bottom: Z0
///     start: q0
///     accept: q1
///     turns: 1                 (optional)
///     q0 a Z0 -> q0 stay
///     q0 eps Z0 -> q1 push A
///     q1 eps A -> q1 pop
PdaMachine parse_pda(std::string_view text);
std::string serialize_pda(const PdaMachine& m);

/// Same layout; actions may also be `push B1 ... Bn` (Bn ends on top) or
/// `replace X1 ... Xn` (X1 ends on top), reading moves may change the stack,
/// and an optional `acceptance: final|bottom` header selects the acceptance
/// condition (default `bottom`).
LoosePda parse_loose_pda(std::string_view text);
std::string serialize_loose_pda(const LoosePda& m);
LoosePda to_loose(const PdaMachine& m);

/// Converts a loose machine into an equivalent normal-form machine. A machine
/// that already satisfies the normal form is returned unchanged.
PdaMachine normalize_pda(const LoosePda& m);

/// Incremental construction of normal-form machines with name interning and
/// duplicate-transition suppression.
class PdaBuilder {
public:
    int state(const std::string& name);
    int input(const std::string& name);
    int stack(const std::string& name);
    std::optional<int> find_state(const std::string& name) const;
    void set_bottom(int z) { bottom_ = z; }
    void set_start(int q) { start_ = q; }
    void accept(int q);
    void add(const PdaTransition& t);
    void stay(int from, int read, int top, int to) { add({from, read, top, to, StackAction::stay, -1}); }
    void pop(int from, int top, int to) { add({from, -1, top, to, StackAction::pop, -1}); }
    void push(int from, int top, int to, int sym) { add({from, -1, top, to, StackAction::push, sym}); }
    int state_count() const { return static_cast<int>(states_.size()); }
    int stack_count() const { return static_cast<int>(stack_.size()); }
    PdaMachine finish(std::optional<int> turn_bound) const;

private:
    struct TransitionHash {
        std::size_t operator()(const PdaTransition& t) const;
    };
    std::vector<std::string> states_, input_, stack_;
    std::unordered_map<std::string, int> state_index_, input_index_, stack_index_;
    std::vector<int> accepting_;
    std::vector<char> accepting_mask_;
    std::vector<PdaTransition> transitions_;
    std::unordered_map<PdaTransition, char, TransitionHash> seen_;
    int bottom_ = 0, start_ = 0;
};

/// Returns `base` if unused, otherwise `base_2`, `base_3`, ... whichever is free.
std::string fresh_name(const std::string& base,
                       const std::unordered_map<std::string, int>& taken);

} // namespace fturn
