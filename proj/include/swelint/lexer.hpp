// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace swelint::sol
{
/// Position of a byte range in a source file. Lines and columns are 1-based;
/// columns count bytes.
struct Span
{
    std::uint32_t line = 1;
    std::uint32_t column = 1;
    std::size_t offset = 0;
    std::size_t length = 0;
    std::uint32_t end_line = 1;
    std::uint32_t end_column = 1;  // column of the last byte + 1

    [[nodiscard]] std::size_t end() const noexcept { return offset + length; }
    [[nodiscard]] bool contains(const Span& other) const noexcept
    {
        return other.offset >= offset && other.end() <= end();
    }
    /// Smallest span covering both.
    [[nodiscard]] static Span cover(const Span& first, const Span& last) noexcept;
};

enum class TokenKind
{
    identifier,
    keyword,
    integer_literal,  // any numeric literal, including rationals and non-address hex
    address_literal,
    string_literal,
    punctuator,
    op,
    comment,
    diagnostic,  // unterminated string or comment; covers the rest of its line
    end
};

struct Token
{
    TokenKind kind = TokenKind::end;
    std::string text;
    Span span;
    std::string leading_trivia;  // whitespace between the previous token and this one
    bool adjacent_to_next = false;

    [[nodiscard]] bool is(TokenKind k, std::string_view t) const noexcept { return kind == k && text == t; }
    [[nodiscard]] bool is_op(std::string_view t) const noexcept { return kind == TokenKind::op && text == t; }
    [[nodiscard]] bool is_punct(std::string_view t) const noexcept
    {
        return kind == TokenKind::punctuator && text == t;
    }
    [[nodiscard]] bool is_keyword(std::string_view t) const noexcept
    {
        return kind == TokenKind::keyword && text == t;
    }
};

bool is_keyword(std::string_view word) noexcept;

/// Splits Solidity source into tokens. The list always ends with an `end`
/// token whose trivia holds trailing whitespace, so that concatenating
/// `leading_trivia + text` over all tokens reproduces the input exactly.
std::vector<Token> tokenize(std::string_view source);

std::string reprint(const std::vector<Token>& tokens);
}  // namespace swelint::sol
