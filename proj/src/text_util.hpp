#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vrc/errors.hpp"

// Small shared helpers for the key=value data files and phrase scanning.
namespace vrc::textutil {

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

// key=value lines; '#' comments and blank lines skipped. Section headers
// "[name]" are returned with the key "[name]" and an empty value.
inline std::vector<std::pair<std::string, std::string>> parse_kv(std::string_view text,
                                                                 const std::string& what) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            entries.emplace_back(t, "");
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::ConfigError, what + ": line without '=': " + t);
        entries.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return entries;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::ConfigError, "cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '-' || c == '_';
}

// Whole-word, case-insensitive occurrence of `phrase` at position `pos` of
// `low` (both already lowercased).
inline bool phrase_at(std::string_view low, std::size_t pos, std::string_view phrase) {
    if (pos + phrase.size() > low.size()) return false;
    if (low.compare(pos, phrase.size(), phrase) != 0) return false;
    if (pos > 0 && is_word_char(low[pos - 1])) return false;
    std::size_t end = pos + phrase.size();
    if (end < low.size() && is_word_char(low[end])) return false;
    return true;
}

// Maps typographic quotes to ASCII so quoted letters parse uniformly.
inline std::string normalize_quotes(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c == 0xE2 && i + 2 < s.size()) {
            unsigned char c1 = static_cast<unsigned char>(s[i + 1]);
            unsigned char c2 = static_cast<unsigned char>(s[i + 2]);
            if (c1 == 0x80 && (c2 == 0x98 || c2 == 0x99)) { // curly single quotes
                out.push_back('\'');
                i += 3;
                continue;
            }
            if (c1 == 0x80 && (c2 == 0x9C || c2 == 0x9D)) { // curly double quotes
                out.push_back('"');
                i += 3;
                continue;
            }
        }
        out.push_back(static_cast<char>(c));
        ++i;
    }
    return out;
}

} // namespace vrc::textutil
