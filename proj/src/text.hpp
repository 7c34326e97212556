#pragma once

// Small helpers shared by the text-format parsers.

#include "fturn/error.hpp"

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace fturn::text {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline bool is_token(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

/// One logical line of a document: comment stripped, trimmed, with its number.
struct Line {
    std::size_t number;
    std::string_view content;
};

inline std::vector<Line> lines(std::string_view doc) {
    std::vector<Line> out;
    std::size_t number = 0;
    while (!doc.empty() || number == 0) {
        ++number;
        std::size_t nl = doc.find('\n');
        std::string_view raw = doc.substr(0, nl);
        doc = nl == std::string_view::npos ? std::string_view{} : doc.substr(nl + 1);
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        raw = trim(raw);
        if (!raw.empty()) out.push_back({number, raw});
        if (doc.empty()) break;
    }
    return out;
}

/// If `line` has the form `key: rest`, returns true and sets `rest`.
inline bool header(std::string_view line, std::string_view key, std::string_view& rest) {
    if (line.size() <= key.size() || line.substr(0, key.size()) != key) return false;
    std::string_view after = line.substr(key.size());
    if (after.empty() || after.front() != ':') return false;
    rest = trim(after.substr(1));
    return true;
}

inline void require_token(const std::string& tok, std::size_t line) {
    if (!is_token(tok)) throw ParseError(line, "invalid symbol name '" + tok + "'");
    if (tok == "eps") throw ParseError(line, "'eps' is reserved for the empty word");
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

} // namespace fturn::text
