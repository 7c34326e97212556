#include "fturn/dot.hpp"

#include <sstream>

namespace fturn {

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

} // namespace

std::string export_dot(const Grammar& g) {
    std::ostringstream out;
    out << "digraph grammar {\n";
    for (const auto& v : g.variables()) out << "  " << quoted("v:" + v) << " [label=" << quoted(v) << ", shape=ellipse];\n";
    for (const auto& t : g.terminals()) out << "  " << quoted("t:" + t) << " [label=" << quoted(t) << ", shape=box];\n";
    for (std::size_t i = 0; i < g.productions().size(); ++i) {
        const auto& p = g.productions()[i];
        for (std::size_t k = 0; k < p.body.size(); ++k) {
            const Symbol s = p.body[k];
            out << "  " << quoted("v:" + g.variables()[p.head]) << " -> "
                << quoted((s.terminal ? "t:" : "v:") + g.name(s)) << " [label=" << quoted("p" + std::to_string(i) + "." + std::to_string(k)) << "];\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string export_dot(const PdaMachine& m) {
    std::ostringstream out;
    out << "digraph pda {\n";
    for (int q = 0; q < m.state_count(); ++q)
        out << "  " << quoted(m.states()[q]) << " [shape=" << (m.is_accepting(q) ? "doublecircle" : "circle")
            << (q == m.start() ? ", style=bold" : "") << "];\n";
    for (const auto& t : m.transitions()) {
        std::string label = (t.read < 0 ? std::string("eps") : m.input_alphabet()[t.read]) + ", " +
                            m.stack_alphabet()[t.top] + " / ";
        switch (t.action) {
        case StackAction::stay: label += "stay"; break;
        case StackAction::pop: label += "pop"; break;
        case StackAction::push: label += "push " + m.stack_alphabet()[t.pushed]; break;
        }
        out << "  " << quoted(m.states()[t.from]) << " -> " << quoted(m.states()[t.to]) << " [label=" << quoted(label) << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string export_dot(const NfaMachine& n) {
    std::ostringstream out;
    out << "digraph nfa {\n";
    for (int q = 0; q < n.state_count(); ++q)
        out << "  " << quoted(n.states()[q]) << " [shape=" << (n.is_accepting(q) ? "doublecircle" : "circle")
            << (q == n.start() ? ", style=bold" : "") << "];\n";
    for (const auto& t : n.transitions())
        out << "  " << quoted(n.states()[t.from]) << " -> " << quoted(n.states()[t.to]) << " [label="
            << quoted(t.symbol < 0 ? std::string("eps") : n.alphabet()[t.symbol]) << "];\n";
    out << "}\n";
    return out.str();
}

} // namespace fturn
