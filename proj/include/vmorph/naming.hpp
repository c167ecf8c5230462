#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vmorph {

enum class Convention { Camel, Snake, Pascal };

const char* to_string(Convention c);

enum class WordCase { Lower, Upper, Title, Verbatim };

// Everything about an identifier's spelling except its lowercase words, so
// that a tokenized identifier can be put back together exactly.
struct IdentifierStyle {
    std::string leading;                  // leading underscores
    std::string trailing;                 // trailing underscores
    std::vector<std::string> separators;  // between words: "" or a run of '_'
    std::vector<WordCase> cases;
    std::vector<std::string> verbatim;    // original spelling, used for WordCase::Verbatim

    Convention convention() const;
};

struct TokenizedIdentifier {
    std::vector<std::string> words;  // lowercase
    IdentifierStyle style;
};

// Splits on underscores and camel-case humps. A run of two or more capitals
// stays one word ("parseXMLHeader" -> parse, xml, header); digits stick to
// the preceding word.
TokenizedIdentifier split_identifier(std::string_view name);
std::vector<std::string> tokenize_identifier(std::string_view name);
Convention convention_of(std::string_view name);

// Plain assembly: camel = first word lowercase then TitleCase words, snake =
// words joined by '_', pascal = all TitleCase.
std::string assemble_identifier(const std::vector<std::string>& words, Convention convention);

// Style-preserving assembly. Words equal to the original keep their exact
// spelling; replaced words take the case of the position they fill. Falls
// back to the plain convention when the word count differs from the style.
std::string assemble_identifier(const std::vector<std::string>& words, const IdentifierStyle& style);

std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);
std::string to_title(std::string_view s);

}  // namespace vmorph
