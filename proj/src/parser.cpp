// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

#include "swelint/parser.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace swelint::sol
{
namespace
{
struct ParseError : std::runtime_error
{
    ParseError(Span s, const std::string& msg) : std::runtime_error(msg), span(s) {}
    Span span;
};

bool is_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

bool is_elementary_name(std::string_view n)
{
    if (n == "address" || n == "bool" || n == "string" || n == "bytes" || n == "byte" || n == "uint" ||
        n == "int" || n == "fixed" || n == "ufixed")
        return true;
    for (const std::string_view prefix : {"uint", "int", "bytes"})
        if (n.starts_with(prefix) && is_digits(n.substr(prefix.size())))
            return true;
    for (const std::string_view prefix : {"fixed", "ufixed"})
        if (n.starts_with(prefix) && n.find('x') != std::string_view::npos)
            return true;
    return false;
}

bool is_unit(std::string_view n)
{
    return n == "wei" || n == "gwei" || n == "ether" || n == "finney" || n == "szabo" || n == "seconds" ||
           n == "minutes" || n == "hours" || n == "days" || n == "weeks" || n == "years";
}

int binary_precedence(const Token& t)
{
    if (t.kind != TokenKind::op)
        return -1;
    const auto& o = t.text;
    if (o == "||")
        return 1;
    if (o == "&&")
        return 2;
    if (o == "==" || o == "!=")
        return 3;
    if (o == "<" || o == ">" || o == "<=" || o == ">=")
        return 4;
    if (o == "|")
        return 5;
    if (o == "^")
        return 6;
    if (o == "&")
        return 7;
    if (o == "<<" || o == ">>" || o == ">>>")
        return 8;
    if (o == "+" || o == "-")
        return 9;
    if (o == "*" || o == "/" || o == "%")
        return 10;
    if (o == "**")
        return 11;
    return -1;
}

bool is_assignment_op(const Token& t)
{
    if (t.kind != TokenKind::op)
        return false;
    const auto& o = t.text;
    return o == "=" || o == "+=" || o == "-=" || o == "*=" || o == "/=" || o == "%=" || o == "|=" || o == "&=" ||
           o == "^=" || o == "<<=" || o == ">>=" || o == ">>>=";
}

NodePtr make_node(NodeKind kind, Span span)
{
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->span = span;
    return n;
}

class Parser
{
public:
    Parser(SourceUnit& unit) : unit_(unit)
    {
        for (const auto& t : unit.tokens)
        {
            if (t.kind == TokenKind::comment)
                continue;
            if (t.kind == TokenKind::diagnostic)
            {
                std::string what = "unexpected character";
                if (t.text.starts_with("/*"))
                    what = "unterminated comment";
                else if (!t.text.empty() && (t.text.front() == '"' || t.text.front() == '\'' ||
                                                t.text.starts_with("hex") || t.text.starts_with("unicode")))
                    what = "unterminated string literal";
                unit.parse_diagnostics.push_back({t.span, what});
                continue;
            }
            toks_.push_back(t);
        }
    }

    void run()
    {
        unit_.file_scope.kind = ContractKind::file_level;
        if (!toks_.empty())
            unit_.file_scope.span = Span::cover(toks_.front().span, toks_.back().span);
        while (!at_end())
        {
            const auto start = pos_;
            try
            {
                top_level();
            }
            catch (const ParseError& err)
            {
                diag(err.span, err.what());
                recover_top_level(start);
            }
        }
        for (auto& c : unit_.contracts)
            finish_contract(c);
        finish_contract(unit_.file_scope);
    }

private:
    // --- token access -----------------------------------------------------

    [[nodiscard]] const Token& cur() const { return toks_[pos_]; }
    [[nodiscard]] const Token& peek(std::size_t k = 1) const
    {
        return toks_[std::min(pos_ + k, toks_.size() - 1)];
    }
    [[nodiscard]] bool at_end() const { return cur().kind == TokenKind::end; }
    [[nodiscard]] bool at_punct(std::string_view p) const { return cur().is_punct(p); }
    [[nodiscard]] bool at_op(std::string_view o) const { return cur().is_op(o); }
    [[nodiscard]] bool at_kw(std::string_view k) const { return cur().is_keyword(k); }
    [[nodiscard]] bool at_ident() const { return cur().kind == TokenKind::identifier; }
    [[nodiscard]] bool at_ident(std::string_view name) const
    {
        return cur().kind == TokenKind::identifier && cur().text == name;
    }

    const Token& advance()
    {
        const Token& t = toks_[pos_];
        if (t.kind != TokenKind::end)
            ++pos_;
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError(cur().span, msg + " near '" + (at_end() ? std::string("end of file") : cur().text) + "'");
    }

    const Token& expect_punct(std::string_view p)
    {
        if (!at_punct(p))
            fail("expected '" + std::string(p) + "'");
        return advance();
    }

    const Token& expect_op(std::string_view o)
    {
        if (!at_op(o))
            fail("expected '" + std::string(o) + "'");
        return advance();
    }

    const Token& expect_ident()
    {
        if (!at_ident())
            fail("expected identifier");
        return advance();
    }

    /// Identifier or a keyword used in a name position (member names, etc).
    const Token& expect_name()
    {
        if (cur().kind != TokenKind::identifier && cur().kind != TokenKind::keyword)
            fail("expected name");
        return advance();
    }

    [[nodiscard]] Span span_from(std::size_t start_tok) const
    {
        const auto last = pos_ > start_tok ? pos_ - 1 : start_tok;
        return Span::cover(toks_[start_tok].span, toks_[last].span);
    }

    void diag(Span s, std::string msg) { unit_.parse_diagnostics.push_back({s, std::move(msg)}); }

    // --- recovery ---------------------------------------------------------

    [[nodiscard]] bool at_top_level_start() const
    {
        return at_kw("contract") || at_kw("interface") || at_kw("library") || at_kw("abstract") ||
               at_kw("pragma") || at_kw("import");
    }

    [[nodiscard]] bool at_member_start() const
    {
        return at_kw("function") || at_kw("modifier") || at_kw("event") || at_kw("constructor") ||
               at_kw("struct") || at_kw("enum") || at_top_level_start();
    }

    void recover_top_level(std::size_t start)
    {
        pos_ = std::max(pos_, start + 1);
        pos_ = std::min(pos_, toks_.size() - 1);
        int depth = 0;
        while (!at_end())
        {
            if (depth == 0 && at_top_level_start())
                return;
            if (at_punct("{"))
                ++depth;
            else if (at_punct("}"))
                depth = std::max(0, depth - 1);
            advance();
        }
    }

    /// Skips one statement or member starting at `start`: through the next
    /// ';' at depth 0 or a balanced block. Never consumes an unmatched '}'.
    void skip_item(std::size_t start)
    {
        pos_ = start;
        int depth = 0;
        int braces = 0;
        while (!at_end())
        {
            const auto& t = cur();
            if (pos_ > start && braces == 0 && at_member_start())
                break;
            if (t.is_punct("{"))
                ++braces;
            else if (t.is_punct("}"))
                braces = std::max(0, braces - 1);
            if (t.is_punct("{") || t.is_punct("(") || t.is_punct("["))
                ++depth;
            else if (t.is_punct("}") || t.is_punct(")") || t.is_punct("]"))
            {
                if (depth == 0)
                    break;
                --depth;
                const bool closes_block = t.is_punct("}");
                advance();
                if (depth == 0 && closes_block)
                    break;
                continue;
            }
            else if (t.is_punct(";") && depth == 0)
            {
                advance();
                break;
            }
            advance();
        }
        if (pos_ == start && !at_end() && !at_punct("}"))
            advance();
    }

    // --- top level --------------------------------------------------------

    void top_level()
    {
        if (at_kw("pragma"))
            return pragma_directive();
        if (at_kw("import"))
            return import_directive();
        if (at_kw("abstract") || at_kw("contract") || at_kw("interface") || at_kw("library"))
            return contract_definition();
        if (at_punct(";"))
        {
            advance();
            return;
        }
        member(unit_.file_scope);
    }

    void pragma_directive()
    {
        const auto start = pos_;
        advance();
        while (!at_end() && !at_punct(";"))
            advance();
        const auto span = span_from(start);
        expect_punct(";");
        const auto full = span_from(start);
        const auto text = std::string_view(unit_.source).substr(full.offset, full.length);
        if (toks_[start + 1].text != "solidity")
            return;
        auto pc = parse_pragma(text);
        pc.span = full;
        if (!pc.diagnostic.empty())
            diag(span, pc.diagnostic);
        unit_.pragmas.push_back(std::move(pc));
    }

    void import_directive()
    {
        const auto start = pos_;
        advance();
        std::string path;
        while (!at_end() && !at_punct(";"))
        {
            if (cur().kind == TokenKind::string_literal && path.empty())
                path = cur().text.substr(1, cur().text.size() - 2);
            advance();
        }
        expect_punct(";");
        if (path.empty())
            throw ParseError(span_from(start), "import without a path");
        unit_.imports.push_back({path, span_from(start)});
    }

    void contract_definition()
    {
        const auto start = pos_;
        ContractDef c;
        if (at_kw("abstract"))
        {
            c.is_abstract = true;
            advance();
        }
        const auto& kw = advance();
        c.kind = kw.text == "interface" ? ContractKind::interface
                 : kw.text == "library" ? ContractKind::library
                                        : ContractKind::contract;
        const auto& name = expect_ident();
        c.name = name.text;
        c.name_span = name.span;
        if (at_kw("is"))
        {
            advance();
            while (true)
            {
                const auto base_start = pos_;
                std::string base = expect_ident().text;
                while (at_punct("."))
                {
                    advance();
                    base += "." + expect_ident().text;
                }
                if (at_punct("("))
                    skip_parenthesized();
                c.bases.push_back({base, span_from(base_start)});
                if (!at_punct(","))
                    break;
                advance();
            }
        }
        expect_punct("{");
        while (!at_punct("}"))
        {
            if (at_end())
            {
                c.span = span_from(start);
                unit_.contracts.push_back(std::move(c));
                fail("unterminated contract body");
            }
            const auto member_start = pos_;
            try
            {
                member(c);
            }
            catch (const ParseError& err)
            {
                diag(err.span, err.what());
                skip_item(member_start);
            }
        }
        advance();
        c.span = span_from(start);
        unit_.contracts.push_back(std::move(c));
    }

    void skip_parenthesized()
    {
        expect_punct("(");
        int depth = 1;
        while (depth > 0)
        {
            if (at_end())
                fail("unbalanced parentheses");
            if (at_punct("("))
                ++depth;
            else if (at_punct(")"))
                --depth;
            advance();
        }
    }

    void member(ContractDef& c)
    {
        if (at_kw("function"))
            return c.functions.push_back(function_definition(FunctionKind::function));
        if ((at_kw("constructor") || at_kw("fallback") || at_kw("receive")) && peek().is_punct("("))
        {
            const auto kind = at_kw("constructor") ? FunctionKind::constructor
                              : at_kw("fallback")  ? FunctionKind::fallback
                                                   : FunctionKind::receive;
            return c.functions.push_back(function_definition(kind));
        }
        if (at_kw("modifier"))
            return c.modifiers.push_back(function_definition(FunctionKind::modifier));
        if (at_kw("event"))
            return c.events.push_back(event_definition());
        if (at_kw("struct"))
            return c.structs.push_back(struct_definition());
        if (at_kw("enum"))
        {
            advance();
            c.enums.push_back(expect_ident().text);
            skip_braced();
            return;
        }
        if (at_kw("using") || (at_ident("error") && peek().kind == TokenKind::identifier))
        {
            while (!at_end() && !at_punct(";"))
                advance();
            expect_punct(";");
            return;
        }
        c.state_vars.push_back(state_variable());
    }

    void skip_braced()
    {
        expect_punct("{");
        int depth = 1;
        while (depth > 0)
        {
            if (at_end())
                fail("unbalanced braces");
            if (at_punct("{"))
                ++depth;
            else if (at_punct("}"))
                --depth;
            advance();
        }
    }

    EventDef event_definition()
    {
        const auto start = pos_;
        advance();
        EventDef e;
        e.name = expect_ident().text;
        e.params = parameter_list();
        if (at_kw("anonymous"))
            advance();
        expect_punct(";");
        e.span = span_from(start);
        return e;
    }

    StructDef struct_definition()
    {
        const auto start = pos_;
        advance();
        StructDef s;
        s.name = expect_ident().text;
        expect_punct("{");
        while (!at_punct("}"))
        {
            if (at_end())
                fail("unterminated struct");
            const auto field_start = pos_;
            VarDecl field;
            field.type = type_name();
            const auto& name = expect_ident();
            field.name = name.text;
            field.name_span = name.span;
            expect_punct(";");
            field.span = span_from(field_start);
            s.fields.push_back(std::move(field));
        }
        advance();
        s.span = span_from(start);
        return s;
    }

    VarDecl state_variable()
    {
        const auto start = pos_;
        VarDecl v;
        v.type = type_name();
        while (true)
        {
            if (at_kw("public"))
                v.visibility = Visibility::public_;
            else if (at_kw("private"))
                v.visibility = Visibility::private_;
            else if (at_kw("internal"))
                v.visibility = Visibility::internal;
            else if (at_kw("constant"))
                v.is_constant = true;
            else if (at_kw("immutable"))
                v.is_immutable = true;
            else if (at_kw("override"))
            {
                advance();
                if (at_punct("("))
                    skip_parenthesized();
                continue;
            }
            else
                break;
            advance();
        }
        const auto& name = expect_ident();
        v.name = name.text;
        v.name_span = name.span;
        if (at_op("="))
        {
            advance();
            v.initializer = expression();
        }
        expect_punct(";");
        v.span = span_from(start);
        return v;
    }

    // --- types ------------------------------------------------------------

    TypeName type_name()
    {
        TypeName t;
        if (at_kw("mapping"))
        {
            advance();
            expect_punct("(");
            auto key = type_name();
            if (at_ident())
                advance();  // named mapping key
            expect_op("=>");
            auto value = type_name();
            if (at_ident())
                advance();
            expect_punct(")");
            t.category = TypeCategory::mapping;
            t.name = "mapping(" + key.name + "=>" + value.name + ")";
            t.args.push_back(std::move(key));
            t.args.push_back(std::move(value));
        }
        else if (at_kw("function"))
        {
            advance();
            const auto params = parameter_list();
            std::vector<VarDecl> returns;
            while (at_kw("internal") || at_kw("external") || at_kw("pure") || at_kw("view") || at_kw("payable") ||
                   at_kw("constant") || at_kw("returns"))
            {
                if (at_kw("returns"))
                {
                    advance();
                    returns = parameter_list();
                }
                else
                    advance();
            }
            t.category = TypeCategory::function;
            t.name = "function(";
            for (std::size_t i = 0; i < params.size(); ++i)
                t.name += (i ? "," : "") + params[i].type.name;
            t.name += ")";
        }
        else if (at_ident() || at_kw("var"))
        {
            std::string name = advance().text;
            if (is_elementary_name(name))
            {
                t.category = TypeCategory::elementary;
                t.name = canonical_elementary(name);
                if (name == "address" && at_kw("payable"))
                    advance();
            }
            else
            {
                while (at_punct(".") && peek().kind == TokenKind::identifier)
                {
                    advance();
                    name += "." + advance().text;
                }
                t.category = name == "var" ? TypeCategory::elementary : TypeCategory::user;
                t.name = name;
            }
        }
        else
            fail("expected type name");

        while (at_punct("["))
        {
            advance();
            TypeName arr;
            arr.category = TypeCategory::array;
            std::string size;
            if (!at_punct("]"))
            {
                const auto size_start = pos_;
                expression();
                const auto s = span_from(size_start);
                size = unit_.source.substr(s.offset, s.length);
                arr.fixed_size = true;
            }
            expect_punct("]");
            arr.name = t.name + "[" + size + "]";
            arr.args.push_back(std::move(t));
            t = std::move(arr);
        }
        return t;
    }

    std::optional<DataLocation> location_keyword()
    {
        if (at_kw("memory"))
            return advance(), DataLocation::memory;
        if (at_kw("storage"))
            return advance(), DataLocation::storage;
        if (at_kw("calldata"))
            return advance(), DataLocation::calldata;
        return std::nullopt;
    }

    std::vector<VarDecl> parameter_list()
    {
        std::vector<VarDecl> params;
        expect_punct("(");
        while (!at_punct(")"))
        {
            const auto start = pos_;
            VarDecl p;
            p.type = type_name();
            while (true)
            {
                if (auto loc = location_keyword())
                    p.location = *loc;
                else if (at_kw("indexed") || at_kw("payable"))
                    advance();
                else
                    break;
            }
            if (at_ident())
            {
                const auto& name = advance();
                p.name = name.text;
                p.name_span = name.span;
            }
            p.span = span_from(start);
            params.push_back(std::move(p));
            if (!at_punct(","))
                break;
            advance();
        }
        expect_punct(")");
        return params;
    }

    // --- functions --------------------------------------------------------

    FunctionDef function_definition(FunctionKind kind)
    {
        const auto start = pos_;
        FunctionDef f;
        f.kind = kind;
        const auto& kw = advance();
        f.name_span = kw.span;
        if (kind == FunctionKind::constructor)
            f.is_constructor_keyword = true;
        if (kind == FunctionKind::function || kind == FunctionKind::modifier)
        {
            if (cur().kind == TokenKind::identifier || (cur().kind == TokenKind::keyword && !at_punct("(")))
            {
                if (!at_punct("("))
                {
                    const auto& name = advance();
                    f.name = name.text;
                    f.name_span = name.span;
                }
            }
            if (kind == FunctionKind::function && f.name.empty())
                f.kind = FunctionKind::fallback;
        }
        if (kind == FunctionKind::modifier && !at_punct("("))
        {
            // parameterless modifier
        }
        else
            f.params = parameter_list();

        while (!at_punct("{") && !at_punct(";"))
        {
            if (at_end())
                fail("unterminated function header");
            if (at_kw("public"))
                f.visibility = Visibility::public_, advance();
            else if (at_kw("private"))
                f.visibility = Visibility::private_, advance();
            else if (at_kw("internal"))
                f.visibility = Visibility::internal, advance();
            else if (at_kw("external"))
                f.visibility = Visibility::external, advance();
            else if (at_kw("pure"))
                f.mutability = Mutability::pure, advance();
            else if (at_kw("view"))
                f.mutability = Mutability::view, advance();
            else if (at_kw("payable"))
                f.mutability = Mutability::payable, advance();
            else if (at_kw("constant"))
                f.mutability = Mutability::constant_modifier, advance();
            else if (at_kw("virtual"))
                f.is_virtual = true, advance();
            else if (at_kw("override"))
            {
                advance();
                if (at_punct("("))
                    skip_parenthesized();
            }
            else if (at_kw("returns"))
            {
                advance();
                f.returns = parameter_list();
            }
            else if (at_ident())
            {
                const auto mod_start = pos_;
                ModifierInvocation m;
                m.name = advance().text;
                while (at_punct(".") && peek().kind == TokenKind::identifier)
                {
                    advance();
                    m.name += "." + advance().text;
                }
                if (at_punct("("))
                    m.args = argument_list();
                m.span = span_from(mod_start);
                f.modifiers_invoked.push_back(std::move(m));
            }
            else
                fail("unexpected token in function header");
        }
        if (at_punct("{"))
            f.body = block();
        else
            advance();
        f.span = span_from(start);
        f.signature = canonical_signature(f);
        return f;
    }

    // --- statements -------------------------------------------------------

    NodePtr block()
    {
        const auto start = pos_;
        expect_punct("{");
        auto node = make_node(NodeKind::block, cur().span);
        while (!at_punct("}"))
        {
            if (at_end())
                fail("unterminated block");
            node->children.push_back(statement_with_recovery());
        }
        advance();
        node->span = span_from(start);
        return node;
    }

    NodePtr statement_with_recovery()
    {
        const auto start = pos_;
        try
        {
            return statement();
        }
        catch (const ParseError& err)
        {
            diag(err.span, err.what());
            skip_item(start);
            auto node = make_node(NodeKind::opaque, span_from(start));
            node->text = err.what();
            return node;
        }
    }

    NodePtr statement()
    {
        const auto start = pos_;
        if (at_punct("{"))
            return block();
        if (at_kw("if"))
        {
            advance();
            expect_punct("(");
            auto node = make_node(NodeKind::if_stmt, {});
            node->children.push_back(expression());
            expect_punct(")");
            node->children.push_back(statement());
            if (at_kw("else"))
            {
                advance();
                node->children.push_back(statement());
            }
            node->span = span_from(start);
            return node;
        }
        if (at_kw("for"))
        {
            advance();
            expect_punct("(");
            auto node = make_node(NodeKind::for_stmt, {});
            if (at_punct(";"))
            {
                advance();
                node->children.push_back(nullptr);
            }
            else
                node->children.push_back(simple_statement());
            if (at_punct(";"))
                node->children.push_back(nullptr);
            else
                node->children.push_back(expression());
            expect_punct(";");
            if (at_punct(")"))
                node->children.push_back(nullptr);
            else
                node->children.push_back(expression());
            expect_punct(")");
            node->children.push_back(statement());
            node->span = span_from(start);
            return node;
        }
        if (at_kw("while"))
        {
            advance();
            expect_punct("(");
            auto node = make_node(NodeKind::while_stmt, {});
            node->children.push_back(expression());
            expect_punct(")");
            node->children.push_back(statement());
            node->span = span_from(start);
            return node;
        }
        if (at_kw("do"))
        {
            advance();
            auto node = make_node(NodeKind::do_while_stmt, {});
            node->children.push_back(statement());
            if (!at_kw("while"))
                fail("expected 'while'");
            advance();
            expect_punct("(");
            node->children.push_back(expression());
            expect_punct(")");
            expect_punct(";");
            node->span = span_from(start);
            return node;
        }
        if (at_kw("return"))
        {
            advance();
            auto node = make_node(NodeKind::return_stmt, {});
            if (!at_punct(";"))
                node->children.push_back(expression());
            expect_punct(";");
            node->span = span_from(start);
            return node;
        }
        if (at_kw("emit"))
        {
            advance();
            auto node = make_node(NodeKind::emit_stmt, {});
            node->children.push_back(expression());
            expect_punct(";");
            node->span = span_from(start);
            return node;
        }
        if (at_kw("throw"))
        {
            advance();
            expect_punct(";");
            return make_node(NodeKind::throw_stmt, span_from(start));
        }
        if (at_kw("break") || at_kw("continue"))
        {
            const auto kind = at_kw("break") ? NodeKind::break_stmt : NodeKind::continue_stmt;
            advance();
            expect_punct(";");
            return make_node(kind, span_from(start));
        }
        if (at_kw("assembly"))
            return assembly_block();
        if (at_kw("unchecked"))
        {
            advance();
            auto node = make_node(NodeKind::unchecked_block, {});
            node->children.push_back(block());
            node->span = span_from(start);
            return node;
        }
        if (at_kw("try"))
            return try_statement();
        if (at_ident("_") && peek().is_punct(";"))
        {
            advance();
            advance();
            return make_node(NodeKind::placeholder_stmt, span_from(start));
        }
        if (at_ident("revert") && (peek().is_punct("(") || peek().kind == TokenKind::identifier))
        {
            advance();
            auto node = make_node(NodeKind::revert_stmt, {});
            if (at_punct("("))
            {
                for (auto& a : argument_list())
                    node->children.push_back(std::move(a));
            }
            else
                node->children.push_back(expression());
            expect_punct(";");
            node->span = span_from(start);
            return node;
        }
        auto node = simple_statement();
        return node;
    }

    /// Variable declaration or expression statement, including the ';'.
    NodePtr simple_statement()
    {
        const auto start = pos_;
        if (auto decl = try_variable_declaration())
            return decl;
        pos_ = start;
        auto node = make_node(NodeKind::expression_stmt, {});
        node->children.push_back(expression());
        expect_punct(";");
        node->span = span_from(start);
        return node;
    }

    std::optional<VarDecl> try_single_decl()
    {
        const auto start = pos_;
        VarDecl d;
        try
        {
            d.type = type_name();
        }
        catch (const ParseError&)
        {
            pos_ = start;
            return std::nullopt;
        }
        if (auto loc = location_keyword())
            d.location = *loc;
        if (!at_ident())
        {
            pos_ = start;
            return std::nullopt;
        }
        const auto& name = advance();
        d.name = name.text;
        d.name_span = name.span;
        d.span = span_from(start);
        return d;
    }

    NodePtr try_variable_declaration()
    {
        const auto start = pos_;
        auto node = make_node(NodeKind::var_decl_stmt, {});
        if (at_punct("("))
        {
            advance();
            bool any = false;
            while (true)
            {
                if (at_punct(",") || at_punct(")"))
                    node->decls.push_back(VarDecl{});
                else if (auto d = try_single_decl())
                {
                    node->decls.push_back(std::move(*d));
                    any = true;
                }
                else
                {
                    pos_ = start;
                    return nullptr;
                }
                if (at_punct(","))
                {
                    advance();
                    continue;
                }
                break;
            }
            if (!any || !at_punct(")") || !peek().is_op("="))
            {
                pos_ = start;
                return nullptr;
            }
            advance();
        }
        else
        {
            auto d = try_single_decl();
            if (!d || !(at_op("=") || at_punct(";")))
            {
                pos_ = start;
                return nullptr;
            }
            node->decls.push_back(std::move(*d));
        }
        if (at_op("="))
        {
            advance();
            node->children.push_back(expression());
        }
        expect_punct(";");
        node->span = span_from(start);
        return node;
    }

    NodePtr assembly_block()
    {
        const auto start = pos_;
        advance();
        if (cur().kind == TokenKind::string_literal)
            advance();
        if (at_punct("("))
            skip_parenthesized();
        expect_punct("{");
        auto node = make_node(NodeKind::assembly, {});
        int depth = 1;
        while (true)
        {
            if (at_end())
                fail("unterminated assembly block");
            if (at_punct("{"))
                ++depth;
            else if (at_punct("}") && --depth == 0)
                break;
            node->raw_tokens.push_back(advance());
        }
        advance();
        node->span = span_from(start);
        return node;
    }

    NodePtr try_statement()
    {
        const auto start = pos_;
        advance();
        while (!at_punct("{"))
        {
            if (at_end())
                fail("unterminated try statement");
            advance();
        }
        auto node = make_node(NodeKind::opaque, {});
        node->children.push_back(block());
        while (at_ident("catch"))
        {
            while (!at_punct("{"))
            {
                if (at_end())
                    fail("unterminated catch clause");
                advance();
            }
            node->children.push_back(block());
        }
        node->span = span_from(start);
        node->text = "try/catch statement is not analysed";
        diag(node->span, node->text);
        return node;
    }

    // --- expressions ------------------------------------------------------

    std::vector<NodePtr> argument_list()
    {
        std::vector<NodePtr> args;
        expect_punct("(");
        if (at_punct("{"))
        {
            // named arguments: f({a: 1, b: 2})
            advance();
            while (!at_punct("}"))
            {
                expect_name();
                expect_op(":");
                args.push_back(expression());
                if (!at_punct(","))
                    break;
                advance();
            }
            expect_punct("}");
        }
        else
        {
            while (!at_punct(")"))
            {
                args.push_back(expression());
                if (!at_punct(","))
                    break;
                advance();
            }
        }
        expect_punct(")");
        return args;
    }

    NodePtr expression() { return assignment(); }

    NodePtr assignment()
    {
        const auto start = pos_;
        auto lhs = conditional();
        if (is_assignment_op(cur()))
        {
            auto node = make_node(NodeKind::assignment, {});
            node->text = advance().text;
            node->children.push_back(std::move(lhs));
            node->children.push_back(assignment());
            node->span = span_from(start);
            return node;
        }
        return lhs;
    }

    NodePtr conditional()
    {
        const auto start = pos_;
        auto cond = binary(1);
        if (!at_op("?"))
            return cond;
        advance();
        auto node = make_node(NodeKind::conditional, {});
        node->children.push_back(std::move(cond));
        node->children.push_back(assignment());
        expect_op(":");
        node->children.push_back(assignment());
        node->span = span_from(start);
        return node;
    }

    NodePtr binary(int min_prec)
    {
        const auto start = pos_;
        auto lhs = unary();
        while (true)
        {
            const int prec = binary_precedence(cur());
            if (prec < min_prec)
                break;
            const auto op = advance().text;
            auto rhs = binary(op == "**" ? prec : prec + 1);
            auto node = make_node(NodeKind::binary_op, {});
            node->text = op;
            node->children.push_back(std::move(lhs));
            node->children.push_back(std::move(rhs));
            node->span = span_from(start);
            lhs = std::move(node);
        }
        return lhs;
    }

    NodePtr unary()
    {
        const auto start = pos_;
        if (at_op("!") || at_op("~") || at_op("-") || at_op("+") || at_op("++") || at_op("--") || at_kw("delete"))
        {
            auto node = make_node(NodeKind::unary_op, {});
            node->text = advance().text;
            node->prefix = true;
            node->children.push_back(unary());
            node->span = span_from(start);
            return node;
        }
        return postfix(primary(), start);
    }

    [[nodiscard]] bool at_call_options() const
    {
        return at_punct("{") && (peek().kind == TokenKind::identifier || peek().kind == TokenKind::keyword) &&
               peek(2).is_op(":");
    }

    NodePtr postfix(NodePtr expr, std::size_t start)
    {
        while (true)
        {
            if (at_punct("."))
            {
                advance();
                auto node = make_node(NodeKind::member_access, {});
                node->text = expect_name().text;
                node->children.push_back(std::move(expr));
                node->span = span_from(start);
                expr = std::move(node);
            }
            else if (at_punct("["))
            {
                advance();
                auto node = make_node(NodeKind::index_access, {});
                node->children.push_back(std::move(expr));
                if (!at_punct("]"))
                {
                    if (at_op(":"))
                        node->children.push_back(nullptr);
                    else
                        node->children.push_back(expression());
                    if (at_op(":"))
                    {
                        advance();
                        if (!at_punct("]"))
                            expression();
                    }
                }
                expect_punct("]");
                node->span = span_from(start);
                expr = std::move(node);
            }
            else if (at_punct("("))
                expr = call(std::move(expr), start);
            else if (at_call_options() &&
                     (expr->kind == NodeKind::member_access || expr->kind == NodeKind::identifier ||
                         expr->kind == NodeKind::new_expr || expr->kind == NodeKind::call_options))
            {
                advance();
                if (expr->kind != NodeKind::call_options)
                {
                    auto wrapper = make_node(NodeKind::call_options, {});
                    wrapper->children.push_back(std::move(expr));
                    expr = std::move(wrapper);
                }
                while (!at_punct("}"))
                {
                    CallOption opt;
                    opt.name = expect_name().text;
                    expect_op(":");
                    opt.value = expression();
                    expr->options.push_back(std::move(opt));
                    if (!at_punct(","))
                        break;
                    advance();
                }
                expect_punct("}");
                expr->span = span_from(start);
            }
            else if (at_op("++") || at_op("--"))
            {
                auto node = make_node(NodeKind::unary_op, {});
                node->text = advance().text;
                node->prefix = false;
                node->children.push_back(std::move(expr));
                node->span = span_from(start);
                expr = std::move(node);
            }
            else
                return expr;
        }
    }

    NodePtr call(NodePtr callee, std::size_t start)
    {
        auto args = argument_list();
        const auto span = span_from(start);

        // Legacy `.value(v)` / `.gas(g)` option chains.
        if (callee->kind == NodeKind::member_access && (callee->text == "value" || callee->text == "gas") &&
            args.size() == 1 && callee->child(0) != nullptr &&
            (callee->child(0)->kind == NodeKind::member_access || callee->child(0)->kind == NodeKind::call_options))
        {
            CallOption opt;
            opt.name = callee->text;
            opt.value = std::move(args.front());
            opt.chained = true;
            auto inner = std::move(callee->children.front());
            if (inner->kind != NodeKind::call_options)
            {
                auto wrapper = make_node(NodeKind::call_options, {});
                wrapper->children.push_back(std::move(inner));
                inner = std::move(wrapper);
            }
            inner->options.push_back(std::move(opt));
            inner->span = span;
            return inner;
        }

        auto node = make_node(NodeKind::call, span);
        if (callee->kind == NodeKind::call_options)
        {
            node->options = std::move(callee->options);
            callee = std::move(callee->children.front());
        }
        if (callee->kind == NodeKind::identifier && callee->text == "require")
            node->kind = NodeKind::require_call;
        else if (callee->kind == NodeKind::identifier && callee->text == "assert")
            node->kind = NodeKind::assert_call;
        node->children.push_back(std::move(callee));
        for (auto& a : args)
            node->children.push_back(std::move(a));
        return node;
    }

    NodePtr primary()
    {
        const auto start = pos_;
        const auto& t = cur();
        if (t.is_punct("("))
        {
            advance();
            std::vector<NodePtr> items;
            bool comma = false;
            while (!at_punct(")"))
            {
                if (at_punct(","))
                {
                    items.push_back(nullptr);
                    comma = true;
                    advance();
                    continue;
                }
                items.push_back(expression());
                if (!at_punct(","))
                    break;
                comma = true;
                advance();
                if (at_punct(")"))
                    items.push_back(nullptr);
            }
            expect_punct(")");
            if (!comma && items.size() == 1 && items.front())
                return std::move(items.front());
            auto node = make_node(NodeKind::tuple, span_from(start));
            node->children = std::move(items);
            return node;
        }
        if (t.is_punct("["))
        {
            advance();
            auto node = make_node(NodeKind::tuple, {});
            while (!at_punct("]"))
            {
                node->children.push_back(expression());
                if (!at_punct(","))
                    break;
                advance();
            }
            expect_punct("]");
            node->span = span_from(start);
            return node;
        }
        if (t.kind == TokenKind::integer_literal || t.kind == TokenKind::address_literal)
        {
            auto node = make_node(NodeKind::literal, t.span);
            node->text = t.text;
            node->literal_kind = t.kind == TokenKind::address_literal ? LiteralKind::address : LiteralKind::number;
            advance();
            if (at_ident() && is_unit(cur().text))
                node->unit = advance().text;
            node->span = span_from(start);
            return node;
        }
        if (t.kind == TokenKind::string_literal)
        {
            auto node = make_node(NodeKind::literal, t.span);
            node->literal_kind = LiteralKind::string;
            while (cur().kind == TokenKind::string_literal)
                node->text += advance().text;
            node->span = span_from(start);
            return node;
        }
        if (t.is_keyword("true") || t.is_keyword("false"))
        {
            auto node = make_node(NodeKind::literal, t.span);
            node->literal_kind = LiteralKind::boolean;
            node->text = advance().text;
            return node;
        }
        if (t.is_keyword("new"))
        {
            advance();
            auto node = make_node(NodeKind::new_expr, {});
            node->type = type_name();
            node->text = node->type.name;
            node->span = span_from(start);
            return node;
        }
        if (t.kind == TokenKind::identifier || t.is_keyword("payable") || t.is_keyword("type"))
        {
            // Elementary array type used as an expression: uint[](n), bytes32[].
            if (t.kind == TokenKind::identifier && is_elementary_name(t.text) && peek().is_punct("[") &&
                peek(2).is_punct("]"))
            {
                auto node = make_node(NodeKind::elementary_type, {});
                node->type = type_name();
                node->text = node->type.name;
                node->span = span_from(start);
                return node;
            }
            auto node = make_node(NodeKind::identifier, t.span);
            node->text = advance().text;
            return node;
        }
        fail("expected expression");
    }

    // --- post-processing --------------------------------------------------

    void finish_contract(ContractDef& c)
    {
        for (auto& f : c.functions)
            f.signature = canonical_signature(f);
    }

    SourceUnit& unit_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};
}  // namespace

SourceUnit parse(std::vector<Token> tokens, std::string path)
{
    SourceUnit unit;
    unit.path = std::move(path);
    unit.source = reprint(tokens);
    unit.tokens = std::move(tokens);
    if (unit.tokens.empty() || unit.tokens.back().kind != TokenKind::end)
    {
        Token end;
        end.span.offset = unit.source.size();
        unit.tokens.push_back(end);
    }
    Parser(unit).run();
    return unit;
}

SourceUnit parse_source(std::string_view source, std::string path)
{
    return parse(tokenize(source), std::move(path));
}
}  // namespace swelint::sol
