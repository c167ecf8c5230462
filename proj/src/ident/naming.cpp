#include "vmorph/naming.hpp"

#include <cctype>

namespace vmorph {

namespace {

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

WordCase classify_case(const std::string& word) {
    if (word == to_lower(word)) return WordCase::Lower;
    if (word.size() > 1 && word == to_upper(word)) return WordCase::Upper;
    if (word == to_title(word)) return WordCase::Title;
    if (word == to_upper(word)) return WordCase::Upper;
    return WordCase::Verbatim;
}

std::vector<std::string> split_humps(std::string_view seg) {
    std::vector<std::string> words;
    std::string current;
    for (std::size_t i = 0; i < seg.size(); ++i) {
        const char c = seg[i];
        if (!current.empty() && is_upper(c)) {
            const char prev = seg[i - 1];
            const bool next_lower = i + 1 < seg.size() && is_lower(seg[i + 1]);
            if (is_lower(prev) || is_digit(prev) || (is_upper(prev) && next_lower)) {
                words.push_back(std::move(current));
                current.clear();
            }
        }
        current += c;
    }
    if (!current.empty()) words.push_back(std::move(current));
    return words;
}

std::string apply_case(const std::string& word, WordCase wc, const std::string& verbatim, bool first_position) {
    switch (wc) {
        case WordCase::Lower: return to_lower(word);
        case WordCase::Upper: return to_upper(word);
        case WordCase::Title: return to_title(word);
        case WordCase::Verbatim:
            if (word == to_lower(verbatim)) return verbatim;
            if (!verbatim.empty() && is_upper(verbatim[0])) return to_title(word);
            return first_position ? to_lower(word) : to_title(word);
    }
    return word;
}

}  // namespace

const char* to_string(Convention c) {
    switch (c) {
        case Convention::Camel: return "camel";
        case Convention::Snake: return "snake";
        case Convention::Pascal: return "pascal";
    }
    return "camel";
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string to_upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::string to_title(std::string_view s) {
    std::string out = to_lower(s);
    if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

Convention IdentifierStyle::convention() const {
    for (const auto& sep : separators) {
        if (!sep.empty()) return Convention::Snake;
    }
    if (!cases.empty() && (cases[0] == WordCase::Title || cases[0] == WordCase::Upper)) {
        // A lone all-caps word such as `URL` reads as a class-style name.
        return Convention::Pascal;
    }
    if (!cases.empty() && cases[0] == WordCase::Verbatim && !verbatim[0].empty() && is_upper(verbatim[0][0])) {
        return Convention::Pascal;
    }
    return Convention::Camel;
}

TokenizedIdentifier split_identifier(std::string_view name) {
    TokenizedIdentifier out;
    std::size_t begin = 0;
    std::size_t end = name.size();
    while (begin < end && name[begin] == '_') ++begin;
    while (end > begin && name[end - 1] == '_') --end;
    out.style.leading = std::string(name.substr(0, begin));
    out.style.trailing = std::string(name.substr(end));

    std::string pending_sep;
    std::size_t i = begin;
    bool first = true;
    while (i < end) {
        std::size_t j = i;
        while (j < end && name[j] != '_') ++j;
        const auto words = split_humps(name.substr(i, j - i));
        for (std::size_t w = 0; w < words.size(); ++w) {
            if (!first) out.style.separators.push_back(w == 0 ? pending_sep : std::string());
            first = false;
            out.words.push_back(to_lower(words[w]));
            out.style.cases.push_back(classify_case(words[w]));
            out.style.verbatim.push_back(words[w]);
        }
        std::size_t k = j;
        while (k < end && name[k] == '_') ++k;
        pending_sep = std::string(name.substr(j, k - j));
        i = k;
    }
    return out;
}

std::vector<std::string> tokenize_identifier(std::string_view name) { return split_identifier(name).words; }

Convention convention_of(std::string_view name) { return split_identifier(name).style.convention(); }

std::string assemble_identifier(const std::vector<std::string>& words, Convention convention) {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        switch (convention) {
            case Convention::Camel:
                out += i == 0 ? to_lower(words[i]) : to_title(words[i]);
                break;
            case Convention::Snake:
                if (i) out += '_';
                out += to_lower(words[i]);
                break;
            case Convention::Pascal:
                out += to_title(words[i]);
                break;
        }
    }
    return out;
}

std::string assemble_identifier(const std::vector<std::string>& words, const IdentifierStyle& style) {
    if (words.size() != style.cases.size()) return style.leading + assemble_identifier(words, style.convention()) + style.trailing;
    std::string out = style.leading;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out += style.separators[i - 1];
        out += apply_case(words[i], style.cases[i], style.verbatim[i], i == 0);
    }
    out += style.trailing;
    return out;
}

}  // namespace vmorph
