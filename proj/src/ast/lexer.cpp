#include "vmorph/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "vmorph/errors.hpp"

namespace vmorph {

namespace {

constexpr std::array<std::string_view, 50> kKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",      "case",       "catch",
    "char",     "class",      "const",     "continue",  "default",   "do",         "double",
    "else",     "enum",       "extends",   "final",     "finally",   "float",      "for",
    "goto",     "if",         "implements", "import",   "instanceof", "int",       "interface",
    "long",     "native",     "new",       "package",   "private",   "protected",  "public",
    "return",   "short",      "static",    "strictfp",  "super",     "switch",     "synchronized",
    "this",     "throw",      "throws",    "transient", "try",       "void",       "volatile",
    "while",
};

// Longest first so that greedy matching works.
constexpr std::array<std::string_view, 47> kPuncts = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=", "+=",
    "-=",   "*=",  "/=",  "%=",  "&=",  "|=", "^=", "<<", ">>", "(",  ")",  "{",  "}",  "[",  "]",  ";",
    ",",    ".",   "=",   "<",   ">",   "!",  "~",  "?",  ":",  "+",  "-",  "*",  "/",  "%",  "@",
};

bool is_single_punct(char c) {
    return std::string_view("&|^").find(c) != std::string_view::npos;
}

class Lexer {
public:
    Lexer(std::string_view text, const std::string& file) : text_(text), file_(file) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_whitespace();
            if (at_end()) break;
            out.push_back(next());
        }
        Token end;
        end.kind = TokenKind::End;
        end.span = Span{file_, here(), here()};
        out.push_back(end);
        return out;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek(std::size_t k = 0) const { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; }
    Position here() const { return Position{line_, col_}; }

    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_whitespace() {
        while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r' || peek() == '\f')) {
            bump();
        }
    }

    Span span_from(Position start) const { return Span{file_, start, here()}; }

    Token make(TokenKind kind, std::size_t begin, Position start) const {
        Token t;
        t.kind = kind;
        t.text = std::string(text_.substr(begin, pos_ - begin));
        t.span = span_from(start);
        return t;
    }

    Token next() {
        const Position start = here();
        const std::size_t begin = pos_;
        const char c = peek();

        if (c == '/' && peek(1) == '/') {
            while (!at_end() && peek() != '\n') bump();
            return make(TokenKind::Comment, begin, start);
        }
        if (c == '/' && peek(1) == '*') {
            bump();
            bump();
            while (!(peek() == '*' && peek(1) == '/')) {
                if (at_end()) throw SyntaxError(span_from(start), "unterminated block comment");
                bump();
            }
            bump();
            bump();
            return make(TokenKind::Comment, begin, start);
        }
        if (is_identifier_start(c)) {
            while (!at_end() && is_identifier_part(peek())) bump();
            Token t = make(TokenKind::Identifier, begin, start);
            if (is_java_keyword(t.text)) t.kind = TokenKind::Keyword;
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number(begin, start);
        if (c == '"') return string_literal(begin, start);
        if (c == '\'') {
            bump();
            throw UnsupportedConstruct(span_from(start), "character literal");
        }
        for (std::string_view p : kPuncts) {
            if (text_.substr(pos_, p.size()) == p) {
                for (std::size_t i = 0; i < p.size(); ++i) bump();
                return make(TokenKind::Punct, begin, start);
            }
        }
        if (is_single_punct(c)) {
            bump();
            return make(TokenKind::Punct, begin, start);
        }
        bump();
        throw SyntaxError(span_from(start), std::string("unexpected character '") + c + "'");
    }

    Token number(std::size_t begin, Position start) {
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X' || peek(1) == 'b' || peek(1) == 'B')) {
            bump();
            bump();
            throw UnsupportedConstruct(span_from(start), "non-decimal integer literal");
        }
        while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') bump();
        if (peek() == '.' || peek() == 'e' || peek() == 'E' || peek() == 'f' || peek() == 'F' || peek() == 'd' ||
            peek() == 'D') {
            bump();
            throw UnsupportedConstruct(span_from(start), "floating-point literal");
        }
        if (peek() == 'l' || peek() == 'L') {
            bump();
            throw UnsupportedConstruct(span_from(start), "long literal");
        }
        if (is_identifier_part(peek())) {
            bump();
            throw SyntaxError(span_from(start), "malformed number");
        }
        Token t = make(TokenKind::IntLiteral, begin, start);
        std::string digits;
        for (char d : t.text) {
            if (d != '_') digits += d;
        }
        if (digits.size() > 1 && digits[0] == '0') throw UnsupportedConstruct(t.span, "octal integer literal");
        if (digits.size() > 10 || std::stoll(digits) > 2147483648LL) {
            throw SyntaxError(t.span, "integer literal out of 32-bit range");
        }
        t.int_value = std::stoll(digits);
        return t;
    }

    Token string_literal(std::size_t begin, Position start) {
        bump();
        while (peek() != '"') {
            if (at_end() || peek() == '\n') throw SyntaxError(span_from(start), "unterminated string literal");
            if (peek() == '\\') bump();
            bump();
        }
        bump();
        return make(TokenKind::StringLiteral, begin, start);
    }

    std::string_view text_;
    const std::string& file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace

std::vector<Token> lex(std::string_view text, const std::string& file) { return Lexer(text, file).run(); }

bool is_java_keyword(std::string_view word) {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool is_reserved_word(std::string_view word) {
    return is_java_keyword(word) || word == "true" || word == "false" || word == "null" || word == "var" ||
           word == "_";
}

bool is_identifier_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool is_identifier_part(char c) { return is_identifier_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

bool is_legal_identifier(std::string_view name) {
    if (name.empty() || !is_identifier_start(name.front())) return false;
    if (!std::all_of(name.begin(), name.end(), is_identifier_part)) return false;
    return !is_reserved_word(name);
}

}  // namespace vmorph
