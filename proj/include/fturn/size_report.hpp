#pragma once

#include "fturn/grammar.hpp"
#include "fturn/nfa.hpp"
#include "fturn/pda.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fturn {

/// Size measures of a grammar or machine.
///
/// `pda_size` counts states times stack symbols other than the bottom symbol;
/// `pda_size_with_bottom` also counts the bottom symbol. Fields that do not
/// apply to the measured object are zero.
struct SizeReport {
    std::string kind;  ///< "grammar", "pda" or "nfa"
    std::size_t var_count = 0;
    std::size_t symb_count = 0;
    std::size_t production_count = 0;
    std::size_t pda_size = 0;
    std::size_t pda_size_with_bottom = 0;
    std::size_t nfa_size = 0;
    std::size_t state_count = 0;
    std::size_t stack_symbol_count = 0;
    std::size_t transition_count = 0;
    std::optional<int> turn_bound;
    /// Free-form entries appended by pipelines (e.g. realized vs. bound sizes).
    std::vector<std::pair<std::string, std::string>> extra;

    bool operator==(const SizeReport&) const = default;
};

SizeReport measure(const Grammar& g);
SizeReport measure(const PdaMachine& m);
SizeReport measure(const NfaMachine& n);

/// `key: value` lines in a fixed order.
std::string to_key_value(const SizeReport& r);
std::string to_json(const SizeReport& r);
SizeReport size_report_from_json(const std::string& json);
SizeReport size_report_from_key_value(const std::string& text);

} // namespace fturn
