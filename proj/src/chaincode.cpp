// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

#include "swelint/chaincode.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace swelint::chaincode
{
namespace
{
class GoLexer
{
public:
    explicit GoLexer(std::string_view src) : src_(src) {}

    void run(ChaincodeFile& out)
    {
        while (pos_ < src_.size())
        {
            const char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n')
            {
                step(1);
                continue;
            }
            const auto start = pos_;
            const auto line = line_;
            const auto col = col_;
            GoTokenKind kind = GoTokenKind::op;
            if (c == '/' && peek(1) == '/')
            {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    step(1);
                kind = GoTokenKind::comment;
            }
            else if (c == '/' && peek(1) == '*')
            {
                step(2);
                while (pos_ < src_.size() && !(src_[pos_] == '*' && peek(1) == '/'))
                    step(1);
                if (pos_ >= src_.size())
                    out.diagnostics.emplace_back(make_span(start, line, col), "unterminated comment");
                else
                    step(2);
                kind = GoTokenKind::comment;
            }
            else if (c == '"' || c == '\'')
            {
                step(1);
                while (pos_ < src_.size() && src_[pos_] != c && src_[pos_] != '\n')
                    step(src_[pos_] == '\\' && pos_ + 1 < src_.size() && src_[pos_ + 1] != '\n' ? 2 : 1);
                if (pos_ < src_.size() && src_[pos_] == c)
                    step(1);
                else
                    out.diagnostics.emplace_back(make_span(start, line, col), "unterminated string literal");
                kind = GoTokenKind::string;
            }
            else if (c == '`')
            {
                step(1);
                while (pos_ < src_.size() && src_[pos_] != '`')
                    step(1);
                if (pos_ < src_.size())
                    step(1);
                else
                    out.diagnostics.emplace_back(make_span(start, line, col), "unterminated raw string");
                kind = GoTokenKind::string;
            }
            else if (ident_char(c) && std::isdigit(static_cast<unsigned char>(c)) == 0)
            {
                while (pos_ < src_.size() && ident_char(src_[pos_]))
                    step(1);
                kind = GoTokenKind::identifier;
            }
            else if (std::isdigit(static_cast<unsigned char>(c)) != 0)
            {
                while (pos_ < src_.size() && (ident_char(src_[pos_]) || src_[pos_] == '.'))
                    step(1);
                kind = GoTokenKind::number;
            }
            else
            {
                static constexpr std::array<std::string_view, 22> multi{"<<=", ">>=", "&^=", "...", ":=", "<-",
                    "&&", "||", "==", "!=", "<=", ">=", "++", "--", "+=", "-=", "*=", "/=", "%=", "|=", "&=", "^="};
                std::size_t len = 1;
                for (const auto m : multi)
                    if (src_.substr(pos_, m.size()) == m)
                    {
                        len = m.size();
                        break;
                    }
                step(len);
            }
            GoToken t;
            t.kind = kind;
            t.text = std::string(src_.substr(start, pos_ - start));
            t.span = make_span(start, line, col);
            (kind == GoTokenKind::comment ? out.comments : out.tokens).push_back(std::move(t));
        }
    }

private:
    static bool ident_char(char c)
    {
        const auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) != 0 || c == '_' || u >= 0x80;
    }

    [[nodiscard]] char peek(std::size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

    void step(std::size_t n)
    {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_)
        {
            if (src_[pos_] == '\n')
            {
                ++line_;
                col_ = 1;
            }
            else
                ++col_;
        }
        last_line_ = line_;
        last_col_ = col_;
    }

    [[nodiscard]] Span make_span(std::size_t start, std::uint32_t line, std::uint32_t col) const
    {
        Span s;
        s.line = line;
        s.column = col;
        s.offset = start;
        s.length = pos_ - start;
        s.end_line = last_line_;
        s.end_column = last_col_;
        return s;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::uint32_t line_ = 1;
    std::uint32_t col_ = 1;
    std::uint32_t last_line_ = 1;
    std::uint32_t last_col_ = 1;
};

std::string unquote(std::string_view lit)
{
    if (lit.size() >= 2)
        return std::string(lit.substr(1, lit.size() - 2));
    return std::string(lit);
}

class StructureParser
{
public:
    explicit StructureParser(ChaincodeFile& f) : f_(f), toks_(f.tokens) {}

    void run()
    {
        std::vector<bool> in_function(toks_.size(), false);
        std::size_t i = 0;
        int depth = 0;
        while (i < toks_.size())
        {
            const auto& t = toks_[i];
            if (depth == 0 && is(i, "import"))
            {
                i = parse_import(i + 1);
                continue;
            }
            if (depth == 0 && is(i, "func"))
            {
                const auto end = parse_func(i, in_function);
                if (end > i)
                {
                    i = end;
                    continue;
                }
            }
            if (depth == 0 && is(i, "var"))
            {
                i = parse_var(i + 1);
                continue;
            }
            if (depth == 0 && is(i, "type") && i + 2 < toks_.size() && is(i + 2, "struct"))
            {
                i = parse_struct(i);
                continue;
            }
            if (t.kind == GoTokenKind::op && (t.text == "{" || t.text == "(" || t.text == "["))
                ++depth;
            else if (t.kind == GoTokenKind::op && (t.text == "}" || t.text == ")" || t.text == "]"))
                depth = std::max(0, depth - 1);
            ++i;
        }

        f_.top_level.name = "<package>";
        for (std::size_t k = 0; k < toks_.size(); ++k)
            if (!in_function[k])
                f_.top_level.token_indices.push_back(k);
        if (!f_.top_level.token_indices.empty())
        {
            f_.top_level.first_line = toks_[f_.top_level.token_indices.front()].span.line;
            f_.top_level.last_line = toks_[f_.top_level.token_indices.back()].span.end_line;
        }
        collect_map_names();
    }

private:
    [[nodiscard]] bool is(std::size_t i, std::string_view text) const
    {
        return i < toks_.size() && toks_[i].kind != GoTokenKind::string && toks_[i].text == text;
    }

    /// Index just past the bracket that closes the one at `open`.
    [[nodiscard]] std::size_t match(std::size_t open) const
    {
        const auto& o = toks_[open].text;
        const std::string close = o == "(" ? ")" : o == "[" ? "]" : "}";
        int depth = 0;
        for (std::size_t i = open; i < toks_.size(); ++i)
        {
            if (toks_[i].kind != GoTokenKind::op)
                continue;
            if (toks_[i].text == o)
                ++depth;
            else if (toks_[i].text == close && --depth == 0)
                return i + 1;
        }
        return toks_.size() + 1;  // unbalanced
    }

    std::size_t parse_import(std::size_t i)
    {
        auto take = [&](std::size_t k) {
            if (k < toks_.size() && toks_[k].kind == GoTokenKind::string)
                f_.imports.push_back({unquote(toks_[k].text), toks_[k].span});
        };
        if (is(i, "("))
        {
            const auto end = std::min(match(i), toks_.size());
            for (auto k = i + 1; k < end; ++k)
                take(k);
            return end;
        }
        if (i < toks_.size() && toks_[i].kind == GoTokenKind::identifier)
            ++i;  // alias
        take(i);
        return i + 1;
    }

    std::size_t parse_func(std::size_t i, std::vector<bool>& in_function)
    {
        FuncRegion r;
        auto k = i + 1;
        if (is(k, "("))
        {
            const auto end = match(k);
            if (end > toks_.size())
                return i;
            for (auto j = k + 1; j + 1 < end; ++j)
                if (toks_[j].kind == GoTokenKind::identifier)
                    r.receiver = toks_[j].text;
            // "(t *T)" names both; the type is the last identifier.
            k = end;
        }
        if (k >= toks_.size() || toks_[k].kind != GoTokenKind::identifier)
            return i;  // function literal or malformed
        r.name = toks_[k].text;
        ++k;
        // Find the body brace outside parameter/result parentheses, skipping
        // `interface{}` and `struct{}` type literals.
        int paren = 0;
        while (k < toks_.size())
        {
            const auto& t = toks_[k];
            if (t.kind == GoTokenKind::op && (t.text == "(" || t.text == "["))
                ++paren;
            else if (t.kind == GoTokenKind::op && (t.text == ")" || t.text == "]"))
                --paren;
            else if (t.kind == GoTokenKind::op && t.text == "{")
            {
                if (k > 0 && (is(k - 1, "interface") || is(k - 1, "struct")))
                {
                    k = std::min(match(k), toks_.size());
                    continue;
                }
                if (paren <= 0)
                    break;
            }
            else if (paren <= 0 && k > i + 1 && t.span.line > toks_[k - 1].span.end_line && !is(k, "{"))
                break;  // declaration without body
            ++k;
        }
        if (k >= toks_.size() || !is(k, "{"))
            return k;
        auto end = match(k);
        if (end > toks_.size())
        {
            f_.diagnostics.emplace_back(toks_[k].span, "unbalanced braces in function '" + r.name + "'");
            end = toks_.size();
        }
        const auto body_end = end <= toks_.size() && end > 0 && is(end - 1, "}") ? end - 1 : end;
        for (auto j = k + 1; j < body_end; ++j)
            r.token_indices.push_back(j);
        for (auto j = i; j < end; ++j)
            in_function[j] = true;
        r.first_line = toks_[i].span.line;
        r.last_line = toks_[end - 1].span.end_line;
        f_.func_regions.push_back(std::move(r));
        return end;
    }

    [[nodiscard]] std::string text_between(std::size_t from, std::size_t to) const
    {
        std::string out;
        for (auto j = from; j < to && j < toks_.size(); ++j)
        {
            if (!out.empty() && toks_[j].kind == GoTokenKind::identifier &&
                toks_[j - 1].kind == GoTokenKind::identifier)
                out += ' ';
            out += toks_[j].text;
        }
        return out;
    }

    /// One "name[, name] [Type] [= expr]" declaration; returns the index after it.
    std::size_t parse_var_spec(std::size_t i, std::size_t limit)
    {
        const auto line = toks_[i].span.line;
        std::vector<std::size_t> names;
        auto k = i;
        while (k < limit && toks_[k].kind == GoTokenKind::identifier)
        {
            names.push_back(k);
            ++k;
            if (is(k, ","))
                ++k;
            else
                break;
        }
        const auto type_start = k;
        while (k < limit && toks_[k].span.line == line && !is(k, "="))
            ++k;
        const auto type = text_between(type_start, k);
        while (k < limit && toks_[k].span.line == line)
            ++k;
        for (const auto n : names)
            f_.package_level_vars.push_back({toks_[n].text, type, toks_[n].span.line, toks_[n].span});
        return std::max(k, i + 1);
    }

    std::size_t parse_var(std::size_t i)
    {
        if (is(i, "("))
        {
            const auto end = std::min(match(i), toks_.size());
            auto k = i + 1;
            while (k + 1 < end)
                k = parse_var_spec(k, end - 1);
            return end;
        }
        if (i >= toks_.size())
            return i;
        return parse_var_spec(i, toks_.size());
    }

    std::size_t parse_struct(std::size_t i)
    {
        StructType s;
        s.name = toks_[i + 1].text;
        s.span = toks_[i + 1].span;
        const auto open = i + 3;
        if (!is(open, "{"))
            return i + 3;
        const auto end = std::min(match(open), toks_.size());
        auto k = open + 1;
        while (k + 1 < end)
        {
            const auto line = toks_[k].span.line;
            auto next = k;
            while (next + 1 < end && toks_[next].span.line == line)
                ++next;
            if (toks_[k].kind == GoTokenKind::identifier && next > k + 1)
            {
                PackageVar field{toks_[k].text, text_between(k + 1, next), line, toks_[k].span};
                s.fields.push_back(std::move(field));
            }
            else if (toks_[k].kind == GoTokenKind::identifier && next == k + 1)
            {
                // embedded type: not a field of its own
            }
            k = next;
        }
        f_.structs.push_back(std::move(s));
        return end;
    }

    void collect_map_names()
    {
        for (std::size_t i = 0; i + 1 < toks_.size(); ++i)
        {
            if (!is(i, "map") || !is(i + 1, "["))
                continue;
            if (i == 0)
                continue;
            // m map[K]V   (var, parameter, field)
            if (toks_[i - 1].kind == GoTokenKind::identifier && toks_[i - 1].text != "return")
            {
                f_.map_typed_names.insert(toks_[i - 1].text);
                continue;
            }
            // m := map[K]V{}   or   m := make(map[K]V)
            auto k = i - 1;
            if (is(k, "(") && k >= 1 && is(k - 1, "make"))
            {
                if (k < 2)
                    continue;
                k -= 2;
            }
            if ((is(k, ":=") || is(k, "=")) && k >= 1 && toks_[k - 1].kind == GoTokenKind::identifier)
                f_.map_typed_names.insert(toks_[k - 1].text);
        }
    }

    ChaincodeFile& f_;
    const std::vector<GoToken>& toks_;
};

// --- rule helpers -----------------------------------------------------------

RawFinding make(const ChaincodeFile& f, int id, const Span& span, std::string construct, std::string message)
{
    return RawFinding{SweId{id}, f.path, span, std::move(construct), std::move(message), std::nullopt};
}

const GoToken* tok(const ChaincodeFile& f, const FuncRegion& r, std::size_t k)
{
    return k < r.token_indices.size() ? &f.tokens[r.token_indices[k]] : nullptr;
}

bool tok_is(const ChaincodeFile& f, const FuncRegion& r, std::size_t k, std::string_view text)
{
    const auto* t = tok(f, r, k);
    return t != nullptr && t->kind != GoTokenKind::string && t->text == text;
}

/// Span from token k through token last (region-relative indices).
Span cover(const ChaincodeFile& f, const FuncRegion& r, std::size_t k, std::size_t last)
{
    return Span::cover(tok(f, r, k)->span, tok(f, r, std::min(last, r.token_indices.size() - 1))->span);
}

/// Region-relative index just past the ')' matching the '(' at k.
std::size_t close_paren(const ChaincodeFile& f, const FuncRegion& r, std::size_t k)
{
    int depth = 0;
    for (auto j = k; j < r.token_indices.size(); ++j)
    {
        if (tok_is(f, r, j, "("))
            ++depth;
        else if (tok_is(f, r, j, ")") && --depth == 0)
            return j + 1;
    }
    return r.token_indices.size();
}

/// Top-level comma separated argument token ranges of the call whose '(' is at k.
std::vector<std::pair<std::size_t, std::size_t>> call_args(const ChaincodeFile& f, const FuncRegion& r, std::size_t k)
{
    std::vector<std::pair<std::size_t, std::size_t>> args;
    const auto end = close_paren(f, r, k);
    if (end <= k + 1)
        return args;
    int depth = 0;
    auto start = k + 1;
    for (auto j = k + 1; j + 1 < end; ++j)
    {
        if (tok_is(f, r, j, "(") || tok_is(f, r, j, "[") || tok_is(f, r, j, "{"))
            ++depth;
        else if (tok_is(f, r, j, ")") || tok_is(f, r, j, "]") || tok_is(f, r, j, "}"))
            --depth;
        else if (depth == 0 && tok_is(f, r, j, ","))
        {
            args.emplace_back(start, j);
            start = j + 1;
        }
    }
    if (start < end - 1)
        args.emplace_back(start, end - 1);
    return args;
}

std::string arg_text(const ChaincodeFile& f, const FuncRegion& r, std::pair<std::size_t, std::size_t> range)
{
    std::string out;
    for (auto j = range.first; j < range.second; ++j)
        out += tok(f, r, j)->text;
    return out;
}

/// Calls `pkg.Name(` where Name is in `names`; reports through `fn(k)` with k
/// the index of `pkg`.
template <typename Fn>
void for_each_qualified_call(const ChaincodeFile& f, const FuncRegion& r, std::string_view pkg,
    std::initializer_list<std::string_view> names, Fn fn)
{
    for (std::size_t k = 0; k + 3 < r.token_indices.size() + 1; ++k)
    {
        if (!tok_is(f, r, k, pkg) || !tok_is(f, r, k + 1, ".") || !tok_is(f, r, k + 3, "("))
            continue;
        if (k > 0 && tok_is(f, r, k - 1, "."))
            continue;
        const auto* name = tok(f, r, k + 2);
        if (name && std::find(names.begin(), names.end(), name->text) != names.end())
            fn(k);
    }
}

void report_import(const ChaincodeFile& f, std::string_view path, int id, const char* what,
    std::vector<RawFinding>& out)
{
    for (const auto& imp : f.imports)
        if (imp.path == path)
            out.push_back(make(f, id, imp.span, "<package>", "import of \"" + imp.path + "\" " + what));
}

// --- rules ----------------------------------------------------------------

void check_global_write(const ChaincodeFile& f, const ChaincodeOptions&, std::vector<RawFinding>& out)
{
    for (const auto& var : f.package_level_vars)
        for (const auto& r : f.func_regions)
        {
            bool shadowed = false;
            for (std::size_t k = 0; k < r.token_indices.size(); ++k)
            {
                if (!tok_is(f, r, k, var.name) || (k > 0 && tok_is(f, r, k - 1, ".")))
                    continue;
                if (tok_is(f, r, k + 1, ":=") || (k > 0 && tok_is(f, r, k - 1, "var")))
                {
                    shadowed = true;
                    continue;
                }
                if (shadowed)
                    continue;
                const auto* next = tok(f, r, k + 1);
                if (next == nullptr || next->kind != GoTokenKind::op)
                    continue;
                static constexpr std::array<std::string_view, 13> assign{"=", "+=", "-=", "*=", "/=", "%=", "|=",
                    "&=", "^=", "<<=", ">>=", "++", "--"};
                if (std::find(assign.begin(), assign.end(), next->text) == assign.end())
                    continue;
                out.push_back(make(f, 162, cover(f, r, k, k + 1), r.construct(),
                    "package-level variable '" + var.name + "' is modified inside " + r.construct() +
                        "; its value differs between peers"));
            }
        }
}

void check_map_range(const ChaincodeFile& f, const ChaincodeOptions&, std::vector<RawFinding>& out)
{
    for (const auto* r : f.regions())
        for (std::size_t k = 0; k + 1 < r->token_indices.size(); ++k)
        {
            if (!tok_is(f, *r, k, "range"))
                continue;
            // range x, range a.b.x
            auto j = k + 1;
            std::string last;
            while (const auto* t = tok(f, *r, j))
            {
                if (t->kind != GoTokenKind::identifier)
                    break;
                last = t->text;
                if (!tok_is(f, *r, j + 1, "."))
                {
                    ++j;
                    break;
                }
                j += 2;
            }
            if (last.empty() || !tok_is(f, *r, j, "{") || !f.map_typed_names.contains(last))
                continue;
            out.push_back(make(f, 163, cover(f, *r, k, j - 1), r->construct(),
                "iteration over map '" + last + "' visits keys in an unspecified order"));
        }
}

bool has_pointer_verb(std::string_view lit)
{
    for (std::size_t i = 0; i + 1 < lit.size(); ++i)
    {
        if (lit[i] != '%')
            continue;
        if (lit[i + 1] == '%')
        {
            ++i;
            continue;
        }
        auto j = i + 1;
        while (j < lit.size() && std::string_view("+-# 0123456789.").find(lit[j]) != std::string_view::npos)
            ++j;
        if (j < lit.size() && lit[j] == 'p')
            return true;
    }
    return false;
}

void check_pointer_output(const ChaincodeFile& f, const ChaincodeOptions&, std::vector<RawFinding>& out)
{
    for (const auto* r : f.regions())
    {
        std::vector<std::size_t> open_calls;  // indices of '(' whose callee ends in 'f'
        std::vector<bool> is_fmt;
        for (std::size_t k = 0; k < r->token_indices.size(); ++k)
        {
            const auto& t = *tok(f, *r, k);
            if (tok_is(f, *r, k, "("))
            {
                const auto* callee = k > 0 ? tok(f, *r, k - 1) : nullptr;
                is_fmt.push_back(callee && callee->kind == GoTokenKind::identifier && callee->text.ends_with("f"));
                open_calls.push_back(k);
            }
            else if (tok_is(f, *r, k, ")") && !open_calls.empty())
            {
                open_calls.pop_back();
                is_fmt.pop_back();
            }
            else if (t.kind == GoTokenKind::string && !is_fmt.empty() && is_fmt.back() && has_pointer_verb(t.text))
                out.push_back(make(f, 164, t.span, r->construct(),
                    "%p formats a memory address, which differs between peers"));
            if (tok_is(f, *r, k, "uintptr") && tok_is(f, *r, k + 1, "("))
                out.push_back(make(f, 164, cover(f, *r, k, k + 1), r->construct(),
                    "uintptr conversion exposes a memory address, which differs between peers"));
        }
    }
}

void check_concurrency(const ChaincodeFile& f, const ChaincodeOptions&, std::vector<RawFinding>& out)
{
    for (const auto* r : f.regions())
        for (std::size_t k = 0; k < r->token_indices.size(); ++k)
        {
            if (tok_is(f, *r, k, "go"))
            {
                const auto* next = tok(f, *r, k + 1);
                if (next && next->kind == GoTokenKind::identifier)
                    out.push_back(make(f, 165, cover(f, *r, k, k + 1), r->construct(),
                        "goroutine started in chaincode; scheduling order differs between peers"));
            }
            else if (tok_is(f, *r, k, "make") && tok_is(f, *r, k + 1, "(") && tok_is(f, *r, k + 2, "chan"))
                out.push_back(make(f, 165, cover(f, *r, k, k + 2), r->construct(),
                    "channel created in chaincode; concurrent execution order differs between peers"));
        }
}

void check_random(const ChaincodeFile& f, const ChaincodeOptions&, std::vector<RawFinding>& out)
{
    report_import(f, "math/rand", 166, "produces different random values on each peer", out);
    for (const auto* r : f.regions())
        for (std::size_t k = 0; k + 2 < r->token_indices.size(); ++k)
        {
            if (!tok_is(f, *r, k, "rand") || !tok_is(f, *r, k + 1, ".") || (k > 0 && tok_is(f, *r, k - 1, ".")))
                continue;
            const auto* name = tok(f, *r, k + 2);
            if (name == nullptr || name->kind != GoTokenKind::identifier || !tok_is(f, *r, k + 3, "("))
                continue;
            out.push_back(make(f, 166, cover(f, *r, k, k + 2), r->construct(),
                "rand." + name->text + " yields different values on each endorsing peer"));
        }
}

void check_timestamp(const ChaincodeFile& f, const ChaincodeOptions&, std::vector<RawFinding>& out)
{
    for (const auto* r : f.regions())
        for (std::size_t k = 0; k + 2 < r->token_indices.size(); ++k)
        {
            if (tok_is(f, *r, k, "time") && tok_is(f, *r, k + 1, ".") && tok_is(f, *r, k + 2, "Now") &&
                tok_is(f, *r, k + 3, "(") && !(k > 0 && tok_is(f, *r, k - 1, ".")))
                out.push_back(make(f, 167, cover(f, *r, k, k + 2), r->construct(),
                    "time.Now() is read at a different moment on each endorsing peer"));
            else if (tok_is(f, *r, k, ".") && tok_is(f, *r, k + 1, "Unix") && tok_is(f, *r, k + 2, "(") &&
                     tok_is(f, *r, k + 3, ")") && k > 0)
                out.push_back(make(f, 167, cover(f, *r, k - 1, k + 3), r->construct(),
                    "system timestamp taken with Unix() differs between endorsing peers"));
        }
}

void check_http(const ChaincodeFile& f, const ChaincodeOptions&, std::vector<RawFinding>& out)
{
    report_import(f, "net/http", 168, "allows web requests whose responses differ between peers", out);
    for (const auto* r : f.regions())
        for_each_qualified_call(f, *r, "http", {"Get", "Post", "Head", "PostForm"}, [&](std::size_t k) {
            out.push_back(make(f, 168, cover(f, *r, k, k + 2), r->construct(),
                "http." + tok(f, *r, k + 2)->text + " result can differ between endorsing peers"));
        });
}

void check_exec(const ChaincodeFile& f, const ChaincodeOptions&, std::vector<RawFinding>& out)
{
    report_import(f, "os/exec", 169, "runs system commands whose output differs between peers", out);
    for (const auto* r : f.regions())
        for_each_qualified_call(f, *r, "exec", {"Command", "CommandContext"}, [&](std::size_t k) {
            out.push_back(make(f, 169, cover(f, *r, k, k + 2), r->construct(),
                "external command output may change from peer to peer"));
        });
}

void check_file_access(const ChaincodeFile& f, const ChaincodeOptions&, std::vector<RawFinding>& out)
{
    for (const auto* r : f.regions())
    {
        auto report = [&](std::size_t k) {
            out.push_back(make(f, 170, cover(f, *r, k, k + 2), r->construct(),
                tok(f, *r, k)->text + "." + tok(f, *r, k + 2)->text +
                    " reads the local file system, which differs between peers"));
        };
        for_each_qualified_call(f, *r, "os", {"Open", "OpenFile", "Create", "ReadFile"}, report);
        for_each_qualified_call(f, *r, "ioutil", {"ReadFile"}, report);
    }
}

void check_imports(const ChaincodeFile& f, const ChaincodeOptions& opts, std::vector<RawFinding>& out)
{
    for (const auto& imp : f.imports)
        if (!import_allowed(imp.path, opts.allowlist))
            out.push_back(make(f, 171, imp.span, "<package>",
                "import \"" + imp.path + "\" is outside the deterministic allowlist"));
}

void check_phantom_read(const ChaincodeFile& f, const ChaincodeOptions&, std::vector<RawFinding>& out)
{
    for (const auto* r : f.regions())
    {
        std::vector<std::size_t> queries;
        bool writes = false;
        for (std::size_t k = 0; k + 1 < r->token_indices.size(); ++k)
        {
            if (!tok_is(f, *r, k + 1, "("))
                continue;
            const auto& name = tok(f, *r, k)->text;
            if (name == "GetQueryResult" || name == "GetHistoryForKey" || name == "GetPrivateDataQueryResult")
                queries.push_back(k);
            else if (name == "PutState" || name == "DelState")
                writes = true;
        }
        if (!writes)
            continue;
        for (const auto k : queries)
            out.push_back(make(f, 172, cover(f, *r, k, k), r->construct(),
                tok(f, *r, k)->text + " result is not re-validated at commit while the same function writes state"));
    }
}

void check_struct_fields(const ChaincodeFile& f, const ChaincodeOptions&, std::vector<RawFinding>& out)
{
    for (const auto& s : f.structs)
    {
        const bool chaincode_receiver = std::any_of(f.func_regions.begin(), f.func_regions.end(),
            [&](const FuncRegion& r) { return r.receiver == s.name && (r.name == "Invoke" || r.name == "Init"); });
        if (!chaincode_receiver)
            continue;
        for (const auto& field : s.fields)
            out.push_back(make(f, 173, field.span, s.name + "." + field.name,
                "field '" + field.name + "' of chaincode struct " + s.name +
                    " holds state outside the ledger; peers diverge"));
    }
}

void check_cross_channel(const ChaincodeFile& f, const ChaincodeOptions&, std::vector<RawFinding>& out)
{
    for (const auto* r : f.regions())
        for (std::size_t k = 0; k + 1 < r->token_indices.size(); ++k)
        {
            if (!tok_is(f, *r, k, "InvokeChaincode") || !tok_is(f, *r, k + 1, "("))
                continue;
            const auto args = call_args(f, *r, k + 1);
            if (args.size() < 3)
                continue;
            const auto channel = arg_text(f, *r, args[2]);
            if (channel == "\"\"" || channel == "``")
                continue;
            out.push_back(make(f, 174, cover(f, *r, k, close_paren(f, *r, k + 1) - 1), r->construct(),
                "InvokeChaincode on channel " + channel + "; writes in another channel are not committed"));
        }
}

void check_read_your_write(const ChaincodeFile& f, const ChaincodeOptions&, std::vector<RawFinding>& out)
{
    for (const auto* r : f.regions())
    {
        std::vector<std::string> written;
        for (std::size_t k = 0; k + 1 < r->token_indices.size(); ++k)
        {
            if (!tok_is(f, *r, k + 1, "("))
                continue;
            const auto& name = tok(f, *r, k)->text;
            if (name != "PutState" && name != "GetState")
                continue;
            const auto args = call_args(f, *r, k + 1);
            if (args.empty())
                continue;
            const auto key = arg_text(f, *r, args[0]);
            if (name == "PutState")
                written.push_back(key);
            else if (std::find(written.begin(), written.end(), key) != written.end())
                out.push_back(make(f, 175, cover(f, *r, k, close_paren(f, *r, k + 1) - 1), r->construct(),
                    "GetState(" + key + ") after PutState(" + key +
                        ") returns the committed value, not the pending write"));
        }
    }
}

DetectorRule meta(int id, std::string name, std::string trigger, Severity sev, Confidence conf)
{
    return DetectorRule{SweId{id}, std::move(name), std::move(trigger), Applicability::always(), sev, conf,
        Language::go_chaincode};
}
}  // namespace

std::string_view ChaincodeFile::line_text(std::uint32_t line) const noexcept
{
    std::size_t start = 0;
    for (std::uint32_t l = 1; l < line; ++l)
    {
        const auto nl = source.find('\n', start);
        if (nl == std::string::npos)
            return {};
        start = nl + 1;
    }
    auto end = source.find('\n', start);
    if (end == std::string::npos)
        end = source.size();
    std::string_view v(source);
    v = v.substr(start, end - start);
    if (!v.empty() && v.back() == '\r')
        v.remove_suffix(1);
    return v;
}

std::vector<const FuncRegion*> ChaincodeFile::regions() const
{
    std::vector<const FuncRegion*> out;
    for (const auto& r : func_regions)
        out.push_back(&r);
    out.push_back(&top_level);
    return out;
}

ChaincodeFile parse_chaincode(std::string_view source, std::string path)
{
    ChaincodeFile f;
    f.path = std::move(path);
    f.source = std::string(source);
    GoLexer(f.source).run(f);
    StructureParser(f).run();
    return f;
}

std::vector<std::string> ChaincodeOptions::default_allowlist()
{
    return {"fmt", "strconv", "strings", "bytes", "errors", "encoding/*", "sort", "math", "math/*", "!math/rand",
        "github.com/hyperledger/fabric/core/chaincode/shim", "github.com/hyperledger/fabric/protos/peer",
        "github.com/hyperledger/fabric-chaincode-go/shim", "github.com/hyperledger/fabric-chaincode-go/pkg/*",
        "github.com/hyperledger/fabric-protos-go/peer", "github.com/hyperledger/fabric-contract-api-go/contractapi"};
}

std::vector<std::string> load_allowlist(std::string_view json_text)
{
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(json_text);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw UsageError(std::string("allowlist: ") + e.what());
    }
    if (!doc.is_array())
        throw UsageError("allowlist: expected a JSON array of import patterns");
    std::vector<std::string> out;
    for (const auto& item : doc)
    {
        if (!item.is_string())
            throw UsageError("allowlist: every entry must be a string");
        out.push_back(item.get<std::string>());
    }
    return out;
}

bool import_allowed(std::string_view path, const std::vector<std::string>& allowlist)
{
    auto matches = [&](std::string_view pattern) {
        if (pattern.ends_with("/*"))
        {
            const auto prefix = pattern.substr(0, pattern.size() - 1);  // keeps the slash
            return path.starts_with(prefix) && path.size() > prefix.size();
        }
        return path == pattern;
    };
    bool allowed = false;
    for (const auto& p : allowlist)
    {
        if (p.starts_with("!"))
        {
            if (matches(std::string_view(p).substr(1)))
                return false;
        }
        else if (matches(p))
            allowed = true;
    }
    return allowed;
}

const std::vector<ChaincodeRule>& chaincode_rules()
{
    using S = Severity;
    using C = Confidence;
    static const std::vector<ChaincodeRule> rules{
        {meta(162, "Non-determinism arising from Global Variable", "package-level var assigned inside a function", S::medium, C::medium),
            check_global_write},
        {meta(163, "Non-determinism arising from KVS structure iteration", "range loop over a map-typed identifier", S::high, C::high),
            check_map_range},
        {meta(164, "Non-determinism arising from Reified Object Addresses", "%p format verb or uintptr( conversion", S::medium, C::medium),
            check_pointer_output},
        {meta(165, "Non-determinism arising from Concurrency of Program", "go statement or make(chan", S::medium, C::medium),
            check_concurrency},
        {meta(166, "Non-determinism arising from Generating Random Number", "math/rand import or rand. call", S::high, C::high), check_random},
        {meta(167, "Non-determinism arising from System Timestamp", "time.Now( or .Unix() call", S::high, C::high), check_timestamp},
        {meta(168, "Non-determinism arising from Web service", "net/http import or http.Get/http.Post call", S::high, C::high), check_http},
        {meta(169, "Non-determinism arising from System Command Execution", "os/exec import or exec.Command call", S::high, C::high),
            check_exec},
        {meta(170, "Non-determinism arising from External File Accessing", "os.Open/os.Create/os.ReadFile/ioutil.ReadFile call", S::medium,
             C::high),
            check_file_access},
        {meta(171, "Non-determinism arising from External Library Calling", "import outside the deterministic allowlist", S::info, C::low),
            check_imports},
        {meta(172, "Phantom read from range query", "range-query call and PutState/DelState in one function", S::medium,
             C::medium),
            check_phantom_read},
        {meta(173, "Field Declarations in chaincode structure", "field of a struct that receives Invoke or Init", S::high, C::high),
            check_struct_fields},
        {meta(174, "Cross Channel Chaincode Invocation", "InvokeChaincode with a non-empty channel argument",
             S::info, C::low),
            check_cross_channel},
        {meta(175, "Read-Write Conflict", "GetState(k) after PutState(k) with the same key text", S::medium,
             C::medium),
            check_read_your_write},
    };
    return rules;
}

std::vector<DetectorRule> chaincode_rule_set()
{
    std::vector<DetectorRule> out;
    for (const auto& r : chaincode_rules())
        out.push_back(r.meta);
    return out;
}
}  // namespace swelint::chaincode
