// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

#include "swelint/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <iterator>

namespace swelint::sol
{
namespace
{
constexpr std::string_view keywords[] = {"abstract", "anonymous", "as", "assembly", "break", "calldata",
    "catch", "constant", "constructor", "continue", "contract", "delete", "do", "else", "emit", "enum", "event",
    "external", "fallback", "false", "for", "function", "if", "immutable", "import", "indexed", "interface",
    "internal", "is", "library", "mapping", "memory", "modifier", "new", "override", "payable", "pragma",
    "private", "public", "pure", "receive", "return", "returns", "storage", "struct", "throw", "true", "try",
    "type", "unchecked", "using", "var", "view", "virtual", "while"};

// Longest first within each leading character.
constexpr std::array<std::string_view, 41> operators{">>>=", "<<=", ">>=", ">>>", "**", "++", "--", "==",
    "!=", "<=", ">=", "&&", "||", "+=", "-=", "*=", "/=", "%=", "|=", "&=", "^=", "<<", ">>", "=>", ":=", "->",
    "+", "-", "*", "/", "%", "=", "<", ">", "!", "~", "&", "|", "^", "?", ":"};

constexpr std::string_view punctuators = "()[]{};,.";

bool ident_start(char c) noexcept
{
    return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '$';
}

bool ident_char(char c) noexcept
{
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '$';
}

bool is_address_text(std::string_view t) noexcept
{
    if (t.size() != 42 || t[0] != '0' || (t[1] != 'x' && t[1] != 'X'))
        return false;
    return std::all_of(t.begin() + 2, t.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; });
}

class Lexer
{
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        while (true)
        {
            const auto ws_start = pos_;
            while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
                advance(1);
            std::string trivia(src_.substr(ws_start, pos_ - ws_start));
            if (!out.empty())
                out.back().adjacent_to_next = trivia.empty();

            if (pos_ >= src_.size())
            {
                Token end;
                end.kind = TokenKind::end;
                end.leading_trivia = std::move(trivia);
                end.span = make_span(pos_, line_, col_);
                out.push_back(std::move(end));
                return out;
            }
            Token tok = next();
            tok.leading_trivia = std::move(trivia);
            out.push_back(std::move(tok));
        }
    }

private:
    void advance(std::size_t n)
    {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i)
        {
            if (src_[pos_] == '\n')
            {
                ++line_;
                col_ = 1;
            }
            else
                ++col_;
            ++pos_;
        }
    }

    Span make_span(std::size_t start, std::uint32_t line, std::uint32_t col) const
    {
        Span s;
        s.offset = start;
        s.length = pos_ - start;
        s.line = line;
        s.column = col;
        s.end_line = line_;
        s.end_column = col_;
        return s;
    }

    Token finish(TokenKind kind, std::size_t start, std::uint32_t line, std::uint32_t col)
    {
        Token t;
        t.kind = kind;
        t.text = std::string(src_.substr(start, pos_ - start));
        t.span = make_span(start, line, col);
        return t;
    }

    void to_end_of_line()
    {
        while (pos_ < src_.size() && src_[pos_] != '\n')
            advance(1);
    }

    Token next()
    {
        const auto start = pos_;
        const auto line = line_;
        const auto col = col_;
        const char c = src_[pos_];
        const char n = pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0';

        if (c == '/' && n == '/')
        {
            to_end_of_line();
            return finish(TokenKind::comment, start, line, col);
        }
        if (c == '/' && n == '*')
        {
            const auto close = src_.find("*/", pos_ + 2);
            if (close == std::string_view::npos)
            {
                to_end_of_line();
                return finish(TokenKind::diagnostic, start, line, col);
            }
            advance(close + 2 - pos_);
            return finish(TokenKind::comment, start, line, col);
        }
        if (c == '"' || c == '\'')
            return string_literal(c, start, line, col);
        if (ident_start(c))
        {
            while (pos_ < src_.size() && ident_char(src_[pos_]))
                advance(1);
            const auto word = src_.substr(start, pos_ - start);
            // hex"..", unicode".." string prefixes
            if ((word == "hex" || word == "unicode") && pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\''))
                return string_literal(src_[pos_], start, line, col);
            return finish(is_keyword(word) ? TokenKind::keyword : TokenKind::identifier, start, line, col);
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && std::isdigit(static_cast<unsigned char>(n))))
            return number(start, line, col);
        if (punctuators.find(c) != std::string_view::npos)
        {
            advance(1);
            return finish(TokenKind::punctuator, start, line, col);
        }
        for (const auto op : operators)
        {
            if (src_.substr(pos_, op.size()) == op)
            {
                advance(op.size());
                return finish(TokenKind::op, start, line, col);
            }
        }
        // Unknown byte (e.g. stray unicode); keep it as a one-byte diagnostic.
        advance(1);
        return finish(TokenKind::diagnostic, start, line, col);
    }

    Token string_literal(char quote, std::size_t start, std::uint32_t line, std::uint32_t col)
    {
        advance(1);  // opening quote
        while (pos_ < src_.size())
        {
            const char ch = src_[pos_];
            if (ch == '\n')
                break;
            if (ch == '\\')
            {
                advance(2);
                continue;
            }
            advance(1);
            if (ch == quote)
                return finish(TokenKind::string_literal, start, line, col);
        }
        to_end_of_line();
        return finish(TokenKind::diagnostic, start, line, col);
    }

    Token number(std::size_t start, std::uint32_t line, std::uint32_t col)
    {
        if (src_[pos_] == '0' && pos_ + 1 < src_.size() && (src_[pos_ + 1] == 'x' || src_[pos_ + 1] == 'X'))
        {
            advance(2);
            while (pos_ < src_.size() && (std::isxdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                advance(1);
            auto t = finish(TokenKind::integer_literal, start, line, col);
            if (is_address_text(t.text))
                t.kind = TokenKind::address_literal;
            return t;
        }
        const auto digits = [this] {
            while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                advance(1);
        };
        digits();
        if (pos_ + 1 < src_.size() && src_[pos_] == '.' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))
        {
            advance(1);
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E'))
        {
            const auto save_pos = pos_;
            const auto save_line = line_;
            const auto save_col = col_;
            advance(1);
            if (pos_ < src_.size() && src_[pos_] == '-')
                advance(1);
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                digits();
            else
            {
                pos_ = save_pos;
                line_ = save_line;
                col_ = save_col;
            }
        }
        return finish(TokenKind::integer_literal, start, line, col);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::uint32_t line_ = 1;
    std::uint32_t col_ = 1;
};
}  // namespace

Span Span::cover(const Span& first, const Span& last) noexcept
{
    Span s = first;
    if (last.end() > first.end())
    {
        s.length = last.end() - first.offset;
        s.end_line = last.end_line;
        s.end_column = last.end_column;
    }
    return s;
}

bool is_keyword(std::string_view word) noexcept
{
    return std::find(std::begin(keywords), std::end(keywords), word) != std::end(keywords);
}

std::vector<Token> tokenize(std::string_view source)
{
    return Lexer(source).run();
}

std::string reprint(const std::vector<Token>& tokens)
{
    std::string out;
    for (const auto& t : tokens)
    {
        out += t.leading_trivia;
        out += t.text;
    }
    return out;
}
}  // namespace swelint::sol
