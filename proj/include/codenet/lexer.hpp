#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codenet/diagnostics.hpp"

namespace codenet {

/// Keyword, Name, Operator and Punctuation are the four categories the
/// statistics report on. Literal and Other keep the lexer total.
enum class TokenKind : std::uint8_t { Keyword, Name, Operator, Punctuation, Literal, Other };

std::string_view to_string(TokenKind kind) noexcept;
std::optional<TokenKind> token_kind_from_string(std::string_view text) noexcept;

struct Token {
    TokenKind kind = TokenKind::Other;
    std::string lexeme;
    std::size_t offset = 0;  // byte offset within the function text

    friend bool operator==(const Token&, const Token&) = default;
};

struct TokenCounts {
    std::size_t total = 0;
    std::size_t keyword = 0;
    std::size_t name = 0;
    std::size_t op = 0;
    std::size_t punctuation = 0;
    std::size_t literal = 0;
    std::size_t other = 0;

    friend bool operator==(const TokenCounts&, const TokenCounts&) = default;
};

/// True for the C11 reserved words.
bool is_keyword(std::string_view word) noexcept;

/// Hand-written maximal-munch C lexer. Comments and whitespace produce no
/// tokens; a preprocessor directive line becomes one Other token. Unterminated
/// literals run to end of line and are reported to `diag`.
std::vector<Token> tokenize(std::string_view code, Diagnostics* diag = nullptr);

TokenCounts count_tokens(std::span<const Token> tokens) noexcept;

/// "offset<TAB>kind<TAB>lexeme" per line, with backslash, newline, CR and
/// tab in the lexeme written as C escapes.
std::string dump_tokens(std::span<const Token> tokens);

}  // namespace codenet
