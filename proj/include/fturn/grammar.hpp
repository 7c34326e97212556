#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fturn {

/// A word is a sequence of symbol names; symbols may be longer than one
/// character (`a1`, `a2`, ...).
using Word = std::vector<std::string>;

/// Renders a word with single spaces between symbols, or `eps` when empty.
std::string format_word(const Word& w);
/// Splits on whitespace; the single token `eps` denotes the empty word.
Word parse_word(std::string_view text);

/// Reference to a grammar symbol by index into the variable or terminal list.
struct Symbol {
    bool terminal = false;
    int index = 0;

    static Symbol var(int i) { return {false, i}; }
    static Symbol term(int i) { return {true, i}; }
    auto operator<=>(const Symbol&) const = default;
};

struct Production {
    int head = 0;
    std::vector<Symbol> body;

    bool operator==(const Production&) const = default;
};

/// Context-free grammar without ε-productions.
///
/// Symbols are stored by index; names are kept for text I/O. The constructor
/// validates every invariant and throws PreconditionError on violation.
class Grammar {
public:
    Grammar(std::vector<std::string> variables, std::vector<std::string> terminals, int start,
            std::vector<Production> productions, bool epsilon_stripped = false);

    int variable_count() const { return static_cast<int>(variables_.size()); }
    int terminal_count() const { return static_cast<int>(terminals_.size()); }
    const std::vector<std::string>& variables() const { return variables_; }
    const std::vector<std::string>& terminals() const { return terminals_; }
    const std::vector<Production>& productions() const { return productions_; }
    int start() const { return start_; }
    const std::string& start_name() const { return variables_[start_]; }

    /// True when the language this grammar was derived from contained ε and
    /// the empty word was dropped to keep the grammar ε-free.
    bool epsilon_stripped() const { return epsilon_stripped_; }

    std::optional<int> find_variable(std::string_view name) const;
    std::optional<int> find_terminal(std::string_view name) const;
    const std::string& name(Symbol s) const {
        return s.terminal ? terminals_[s.index] : variables_[s.index];
    }

    /// Production indices grouped by head, in document order.
    const std::vector<std::vector<int>>& productions_by_head() const { return by_head_; }

    bool is_cnf() const;
    bool operator==(const Grammar& other) const;

private:
    std::vector<std::string> variables_;
    std::vector<std::string> terminals_;
    int start_;
    std::vector<Production> productions_;
    bool epsilon_stripped_;
    std::unordered_map<std::string, int> variable_index_;
    std::unordered_map<std::string, int> terminal_index_;
    std::vector<std::vector<int>> by_head_;
};

/// Incremental construction of grammars whose intermediate form may contain
/// ε-bodies. `finish` removes them and records whether ε itself was lost.
class GrammarBuilder {
public:
    int variable(const std::string& name);
    int terminal(const std::string& name);
    std::optional<int> find_variable(const std::string& name) const;
    void set_start(int v) { start_ = v; }
    /// Adds a production; an empty body is allowed here.
    void add(int head, std::vector<Symbol> body);
    int variable_count() const { return static_cast<int>(variables_.size()); }
    std::size_t production_count() const { return productions_.size(); }
    const std::vector<std::string>& variable_names() const { return variables_; }

    /// Eliminates ε-bodies, drops duplicate productions and builds the grammar.
    Grammar finish() const;

private:
    std::vector<std::string> variables_;
    std::vector<std::string> terminals_;
    std::unordered_map<std::string, int> variable_index_;
    std::unordered_map<std::string, int> terminal_index_;
    std::vector<Production> productions_;
    int start_ = 0;
};

/// Parses the line-oriented grammar format:
///
///     start: S
///     variables: S A          (optional)
///     terminals: a b          (optional)
///     S -> A b | a
///
/// Without a `terminals:` header every body symbol that never occurs as a
/// head is a terminal.
Grammar parse_grammar(std::string_view text);
std::string serialize_grammar(const Grammar& g);

/// Symb(g) = sum over productions of (2 + body length).
std::size_t symb_count(const Grammar& g);

} // namespace fturn
