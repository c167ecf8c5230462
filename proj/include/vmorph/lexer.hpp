#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vmorph/span.hpp"

namespace vmorph {

enum class TokenKind {
    Identifier,
    Keyword,
    IntLiteral,
    StringLiteral,
    Punct,    // operators and separators
    Comment,  // `// ...` or `/* ... */`
    End,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;  // exact source text
    Span span;
    std::int64_t int_value = 0;

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
    bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
};

// Tokenizes Java source. Comments are returned as tokens; whitespace is
// dropped. Character, floating-point, and long literals are rejected as
// unsupported. The token list always ends with an End token.
std::vector<Token> lex(std::string_view text, const std::string& file);

bool is_java_keyword(std::string_view word);
// Keywords plus the literal words `true`, `false`, `null` and the
// contextual `var`; none of these may name a renamed identifier.
bool is_reserved_word(std::string_view word);
bool is_identifier_start(char c);
bool is_identifier_part(char c);
bool is_legal_identifier(std::string_view name);

}  // namespace vmorph
