#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <unordered_set>

#include "clonescope/error.hpp"
#include "clonescope/frontend/token.hpp"

namespace clonescope::frontend {

namespace {

const std::unordered_set<std::string_view>& keywords() {
    static const std::unordered_set<std::string_view> set = {
        "abstract", "anonymous", "assembly", "break",     "calldata", "catch",     "constant",
        "constructor", "continue", "contract", "delete",  "do",       "else",      "emit",
        "enum",     "event",     "external", "fallback",  "false",    "for",       "function",
        "if",       "import",    "indexed",  "interface", "internal", "is",        "library",
        "mapping",  "memory",    "modifier", "new",       "override", "payable",   "private",
        "public",   "pure",      "receive",  "return",    "returns",  "storage",   "struct",
        "throw",    "true",      "try",      "type",      "unchecked", "using",    "var",
        "view",     "virtual",   "while",
    };
    return set;
}

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool is_ident_part(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

// Longest match first.
constexpr std::array<std::string_view, 26> kMultiCharPunct = {
    ">>>=", "<<=", ">>=", ">>>", "**", "==", "!=", "<=", ">=", "&&", "||", "++", "--",
    "+=",   "-=",  "*=",  "/=",  "%=", "|=", "&=", "^=", "<<", ">>", "=>", "->", ":=",
};

constexpr std::string_view kSingleCharPunct = "+-*/%=<>!~&|^?:;,.()[]{}";

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_trivia();
            if (pos_ >= src_.size()) break;
            Token tok = next();
            if (tok.is(TokenKind::Identifier, "pragma")) {
                skip_pragma(tok);
                continue;
            }
            out.push_back(std::move(tok));
        }
        return out;
    }

private:
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    SourceSpan here() const { return {line_, col_, line_, col_}; }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && peek() != '\n') advance();
            } else if (c == '/' && peek(1) == '*') {
                const SourceSpan start = here();
                advance();
                advance();
                while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) advance();
                if (pos_ >= src_.size()) throw LexError(start, "unterminated block comment");
                advance();
                advance();
            } else {
                return;
            }
        }
    }

    // `pragma` runs to the next ';' and is dropped; its contents (version
    // ranges like ^0.4.24) are not in the token grammar.
    void skip_pragma(const Token& start) {
        while (pos_ < src_.size() && peek() != ';') advance();
        if (pos_ >= src_.size()) throw LexError(start.span, "unterminated pragma directive");
        advance();
    }

    Token next() {
        Token tok;
        tok.offset = pos_;
        tok.span.start_line = line_;
        tok.span.start_col = col_;
        const char c = peek();
        if (is_ident_start(c)) {
            while (pos_ < src_.size() && is_ident_part(peek())) advance();
            tok.lexeme = std::string(src_.substr(tok.offset, pos_ - tok.offset));
            tok.kind = keywords().contains(tok.lexeme) || is_elementary_type_keyword(tok.lexeme) ||
                               is_unit_keyword(tok.lexeme)
                           ? TokenKind::Keyword
                           : TokenKind::Identifier;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            lex_number();
            tok.kind = TokenKind::Number;
            tok.lexeme = std::string(src_.substr(tok.offset, pos_ - tok.offset));
        } else if (c == '"' || c == '\'') {
            lex_string(c);
            tok.kind = TokenKind::String;
            tok.lexeme = std::string(src_.substr(tok.offset, pos_ - tok.offset));
        } else {
            tok.kind = TokenKind::Punct;
            tok.lexeme = lex_punct();
        }
        // End column is inclusive: step back onto the last character.
        tok.span.end_line = line_;
        tok.span.end_col = col_ - 1;
        return tok;
    }

    void lex_number() {
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            advance();
            advance();
            while (std::isxdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
            return;
        }
        auto digits = [&] {
            while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
        };
        digits();
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            advance();
            digits();
        }
        if ((peek() == 'e' || peek() == 'E') &&
            (std::isdigit(static_cast<unsigned char>(peek(1))) ||
             (peek(1) == '-' && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
            advance();
            if (peek() == '-') advance();
            digits();
        }
        if (is_ident_start(peek()))
            throw LexError(here(), std::string("invalid character '") + peek() + "' in number literal");
    }

    void lex_string(char quote) {
        const SourceSpan start = here();
        advance();
        while (pos_ < src_.size() && peek() != quote) {
            if (peek() == '\n') throw LexError(start, "unterminated string literal");
            if (peek() == '\\' && pos_ + 1 < src_.size()) advance();
            advance();
        }
        if (pos_ >= src_.size()) throw LexError(start, "unterminated string literal");
        advance();
    }

    std::string lex_punct() {
        const std::string_view rest = src_.substr(pos_);
        for (std::string_view p : kMultiCharPunct) {
            if (rest.starts_with(p)) {
                for (std::size_t i = 0; i < p.size(); ++i) advance();
                return std::string(p);
            }
        }
        const char c = peek();
        if (kSingleCharPunct.find(c) == std::string_view::npos) {
            const auto byte = static_cast<unsigned char>(c);
            std::string shown = byte >= 0x20 && byte < 0x7f ? std::string(1, c)
                                                            : "\\x" + std::to_string(byte);
            throw LexError(here(), "illegal character '" + shown + "'");
        }
        advance();
        return std::string(1, c);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
    });
}

}  // namespace

std::string_view token_kind_name(TokenKind kind) noexcept {
    switch (kind) {
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Identifier: return "ident";
        case TokenKind::Number: return "number";
        case TokenKind::String: return "string";
        case TokenKind::Punct: return "punct";
        case TokenKind::EndOfFile: return "eof";
    }
    return "unknown";
}

bool is_elementary_type_keyword(std::string_view w) noexcept {
    if (w == "bool" || w == "address" || w == "string" || w == "bytes" || w == "byte" ||
        w == "int" || w == "uint" || w == "var")
        return true;
    auto sized = [](std::string_view digits, int lo, int hi, int step) {
        if (!all_digits(digits) || digits.size() > 3 || digits.front() == '0') return false;
        const int n = std::stoi(std::string(digits));
        return n >= lo && n <= hi && n % step == 0;
    };
    if (w.starts_with("uint")) return sized(w.substr(4), 8, 256, 8);
    if (w.starts_with("int")) return sized(w.substr(3), 8, 256, 8);
    if (w.starts_with("bytes")) return sized(w.substr(5), 1, 32, 1);
    return false;
}

bool is_unit_keyword(std::string_view w) noexcept {
    static constexpr std::array<std::string_view, 11> units = {
        "wei", "gwei", "szabo", "finney", "ether", "seconds", "minutes", "hours", "days", "weeks", "years"};
    return std::find(units.begin(), units.end(), w) != units.end();
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace clonescope::frontend
