#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "clonescope/frontend/span.hpp"

namespace clonescope::frontend {

enum class TokenKind { Keyword, Identifier, Number, String, Punct, EndOfFile };

std::string_view token_kind_name(TokenKind kind) noexcept;

struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    std::string lexeme;
    SourceSpan span;
    std::size_t offset = 0;  ///< byte offset of the first character

    bool is(TokenKind k, std::string_view text) const { return kind == k && lexeme == text; }
    bool is_punct(std::string_view text) const { return is(TokenKind::Punct, text); }
    bool is_keyword(std::string_view text) const { return is(TokenKind::Keyword, text); }
};

/// Splits Solidity source into tokens. Whitespace, comments and `pragma ...;`
/// directives are skipped; line and column numbers always refer to the
/// original text. No end-of-file token is appended.
/// Throws LexError on a character outside the lexical grammar.
std::vector<Token> tokenize(std::string_view source);

bool is_elementary_type_keyword(std::string_view word) noexcept;
bool is_unit_keyword(std::string_view word) noexcept;

}  // namespace clonescope::frontend
