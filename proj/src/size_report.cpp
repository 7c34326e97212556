#include "fturn/size_report.hpp"

#include "fturn/error.hpp"
#include "text.hpp"

#include <json.hpp>

#include <sstream>

namespace fturn {

SizeReport measure(const Grammar& g) {
    SizeReport r;
    r.kind = "grammar";
    r.var_count = g.variables().size();
    r.symb_count = symb_count(g);
    r.production_count = g.productions().size();
    return r;
}

SizeReport measure(const PdaMachine& m) {
    SizeReport r;
    r.kind = "pda";
    r.state_count = m.states().size();
    r.stack_symbol_count = m.stack_alphabet().size();
    r.pda_size = r.state_count * (r.stack_symbol_count - 1);
    r.pda_size_with_bottom = r.state_count * r.stack_symbol_count;
    r.transition_count = m.transitions().size();
    r.turn_bound = m.turn_bound();
    return r;
}

SizeReport measure(const NfaMachine& n) {
    SizeReport r;
    r.kind = "nfa";
    r.state_count = n.states().size();
    r.nfa_size = r.state_count;
    r.transition_count = n.transitions().size();
    return r;
}

namespace {

std::vector<std::pair<std::string, std::string>> fields(const SizeReport& r) {
    return {
        {"kind", r.kind},
        {"var_count", std::to_string(r.var_count)},
        {"symb_count", std::to_string(r.symb_count)},
        {"production_count", std::to_string(r.production_count)},
        {"pda_size", std::to_string(r.pda_size)},
        {"pda_size_with_bottom", std::to_string(r.pda_size_with_bottom)},
        {"nfa_size", std::to_string(r.nfa_size)},
        {"state_count", std::to_string(r.state_count)},
        {"stack_symbol_count", std::to_string(r.stack_symbol_count)},
        {"transition_count", std::to_string(r.transition_count)},
        {"turn_bound", r.turn_bound ? std::to_string(*r.turn_bound) : "none"},
    };
}

std::size_t to_count(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(key);
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw ParseError(1, "field '" + key + "' needs a nonnegative integer");
    }
}

void assign(SizeReport& r, const std::string& key, const std::string& value) {
    if (key == "kind") r.kind = value;
    else if (key == "var_count") r.var_count = to_count(key, value);
    else if (key == "symb_count") r.symb_count = to_count(key, value);
    else if (key == "production_count") r.production_count = to_count(key, value);
    else if (key == "pda_size") r.pda_size = to_count(key, value);
    else if (key == "pda_size_with_bottom") r.pda_size_with_bottom = to_count(key, value);
    else if (key == "nfa_size") r.nfa_size = to_count(key, value);
    else if (key == "state_count") r.state_count = to_count(key, value);
    else if (key == "stack_symbol_count") r.stack_symbol_count = to_count(key, value);
    else if (key == "transition_count") r.transition_count = to_count(key, value);
    else if (key == "turn_bound") {
        if (value == "none") r.turn_bound.reset();
        else r.turn_bound = static_cast<int>(to_count(key, value));
    } else r.extra.emplace_back(key, value);
}

} // namespace

std::string to_key_value(const SizeReport& r) {
    std::ostringstream out;
    for (const auto& [k, v] : fields(r)) out << k << ": " << v << "\n";
    for (const auto& [k, v] : r.extra) out << k << ": " << v << "\n";
    return out.str();
}

std::string to_json(const SizeReport& r) {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : fields(r)) {
        if (k == "kind") j[k] = v;
        else if (k == "turn_bound") j[k] = r.turn_bound ? nlohmann::ordered_json(*r.turn_bound) : nullptr;
        else j[k] = std::stoull(v);
    }
    for (const auto& [k, v] : r.extra) j[k] = v;
    return j.dump(2) + "\n";
}

SizeReport size_report_from_json(const std::string& json) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(json);
    } catch (const std::exception& e) {
        throw ParseError(1, std::string("invalid JSON: ") + e.what());
    }
    SizeReport r;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& v = it.value();
        if (v.is_null()) assign(r, it.key(), "none");
        else if (v.is_string()) assign(r, it.key(), v.get<std::string>());
        else assign(r, it.key(), v.dump());
    }
    return r;
}

SizeReport size_report_from_key_value(const std::string& doc) {
    SizeReport r;
    for (const auto& ln : text::lines(doc)) {
        auto colon = ln.content.find(':');
        if (colon == std::string_view::npos) throw ParseError(ln.number, "expected 'key: value'");
        assign(r, std::string(text::trim(ln.content.substr(0, colon))),
               std::string(text::trim(ln.content.substr(colon + 1))));
    }
    return r;
}

} // namespace fturn
