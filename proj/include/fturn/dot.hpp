#pragma once

#include "fturn/grammar.hpp"
#include "fturn/nfa.hpp"
#include "fturn/pda.hpp"

#include <string>

namespace fturn {

// Graphviz renderings with nodes and edges emitted in index order.

/// Variables are ellipses, terminals are boxes; one edge per body occurrence.
std::string export_dot(const Grammar& g);
std::string export_dot(const PdaMachine& m);
std::string export_dot(const NfaMachine& n);

} // namespace fturn
