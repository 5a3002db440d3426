// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

#include "analysis.hpp"

#include <algorithm>
#include <array>

namespace swelint::rules
{
namespace
{
constexpr std::array<std::string_view, 17> builtin_names{"msg", "tx", "block", "now", "this", "super", "abi",
    "require", "assert", "revert", "keccak256", "sha256", "sha3", "ecrecover", "gasleft", "selfdestruct", "type"};

bool is_builtin(std::string_view name)
{
    return std::find(builtin_names.begin(), builtin_names.end(), name) != builtin_names.end() ||
           name == "addmod" || name == "mulmod" || name == "ripemd160" || name == "blockhash" ||
           name == "suicide" || name == "address" || name == "payable" || name == "bytes" || name == "string" ||
           name == "_";
}

TypeName elementary(std::string name)
{
    TypeName t;
    t.category = sol::TypeCategory::elementary;
    t.name = std::move(name);
    return t;
}

bool elementary_type_name(std::string_view n)
{
    if (n == "address" || n == "bool" || n == "string" || n == "bytes" || n == "uint" || n == "int" || n == "byte")
        return true;
    for (const std::string_view p : {"uint", "int", "bytes"})
        if (n.starts_with(p) && n.size() > p.size() &&
            std::all_of(n.begin() + static_cast<std::ptrdiff_t>(p.size()), n.end(),
                [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }))
            return true;
    return false;
}
}  // namespace

bool FnScope::is_constructor() const noexcept
{
    return fn->kind == sol::FunctionKind::constructor ||
           (fn->kind == sol::FunctionKind::function && !contract->name.empty() && fn->name == contract->name);
}

bool FnScope::externally_callable() const noexcept
{
    if (fn->kind != sol::FunctionKind::function || is_constructor())
        return false;
    return fn->visibility == sol::Visibility::public_ || fn->visibility == sol::Visibility::external ||
           fn->visibility == sol::Visibility::unspecified;
}

FileAnalysis::FileAnalysis(const SolidityProgram& p, std::size_t unit_index)
    : program(p), unit(*p.units[unit_index]), symbols(p.symbols[unit_index]), options(p.options)
{
    auto add = [&](const ContractDef& c, const FunctionDef& fn) {
        FnScope s;
        s.contract = &c;
        s.fn = &fn;
        s.sym = symbols.find(&c);
        for (const auto& v : fn.params)
            if (!v.name.empty())
            {
                s.locals.emplace(v.name, &v);
                s.params.insert(v.name);
            }
        for (const auto& v : fn.returns)
            if (!v.name.empty())
                s.locals.emplace(v.name, &v);
        if (fn.body)
            sol::walk(*fn.body, [&](const Node& n) {
                for (const auto& d : n.decls)
                    if (!d.name.empty())
                        s.locals.emplace(d.name, &d);
                return true;
            });
        scopes_.push_back(std::move(s));
    };
    for (const auto* c : unit.scopes())
    {
        for (const auto& fn : c->functions)
            add(*c, fn);
        for (const auto& m : c->modifiers)
            add(*c, m);
    }
}

const FnScope* FileAnalysis::enclosing(std::size_t offset) const noexcept
{
    for (const auto& s : scopes_)
        if (offset >= s.fn->span.offset && offset < s.fn->span.end())
            return &s;
    return nullptr;
}

const sol::ContractDef* FileAnalysis::enclosing_contract(std::size_t offset) const noexcept
{
    for (const auto& c : unit.contracts)
        if (offset >= c.span.offset && offset < c.span.end())
            return &c;
    return &unit.file_scope;
}

std::string FileAnalysis::construct(const ContractDef& c, std::string_view member)
{
    if (c.name.empty())
        return std::string(member);
    if (member.empty())
        return c.name;
    return c.name + "." + std::string(member);
}

std::string FileAnalysis::construct(const FnScope& s) const
{
    std::string member = s.fn->name;
    switch (s.fn->kind)
    {
    case sol::FunctionKind::constructor:
        member = "constructor";
        break;
    case sol::FunctionKind::fallback:
        member = "fallback";
        break;
    case sol::FunctionKind::receive:
        member = "receive";
        break;
    default:
        break;
    }
    return construct(*s.contract, member);
}

RawFinding FileAnalysis::finding(int id, const Span& span, std::string construct, std::string message) const
{
    return RawFinding{SweId{id}, unit.path, span, std::move(construct), std::move(message), std::nullopt};
}

std::string_view FileAnalysis::text(const Node& n) const
{
    return std::string_view(unit.source).substr(n.span.offset, n.span.length);
}

const VarDecl* FileAnalysis::local(const Node& ident, const FnScope& s) const
{
    if (ident.kind != NodeKind::identifier)
        return nullptr;
    const auto it = s.locals.find(ident.text);
    return it == s.locals.end() ? nullptr : it->second;
}

const sol::StateVarRef* FileAnalysis::state_var(const Node& ident, const FnScope& s) const
{
    if (ident.kind != NodeKind::identifier || s.sym == nullptr || local(ident, s) != nullptr)
        return nullptr;
    return s.sym->find_state_var(ident.text);
}

bool FileAnalysis::is_parameter(const Node& ident, const FnScope& s) const
{
    return ident.kind == NodeKind::identifier && s.params.contains(ident.text);
}

bool FileAnalysis::is_undeclared(const Node& ident, const FnScope& s) const
{
    if (ident.kind != NodeKind::identifier)
        return false;
    const auto& name = ident.text;
    if (local(ident, s) || state_var(ident, s) || is_builtin(name) || elementary_type_name(name) ||
        contract_named(name))
        return false;
    const auto declared_in = [&](const ContractDef& c) {
        return c.find_function(name) || std::any_of(c.modifiers.begin(), c.modifiers.end(),
                                            [&](const FunctionDef& m) { return m.name == name; }) ||
               std::any_of(c.events.begin(), c.events.end(), [&](const auto& e) { return e.name == name; }) ||
               std::any_of(c.structs.begin(), c.structs.end(), [&](const auto& e) { return e.name == name; }) ||
               std::find(c.enums.begin(), c.enums.end(), name) != c.enums.end();
    };
    if (declared_in(unit.file_scope))
        return false;
    if (s.sym)
        for (const auto* c : s.sym->linearization)
            if (declared_in(*c))
                return false;
    if (!s.sym && declared_in(*s.contract))
        return false;
    return true;
}

const ContractDef* FileAnalysis::contract_named(std::string_view name) const
{
    return program.index ? program.index->find(name, &unit) : nullptr;
}

const sol::StructDef* FileAnalysis::struct_named(std::string_view name, const FnScope& s) const
{
    if (const auto dot = name.rfind('.'); dot != std::string_view::npos)
        name = name.substr(dot + 1);
    auto search = [&](const ContractDef& c) -> const sol::StructDef* {
        for (const auto& st : c.structs)
            if (st.name == name)
                return &st;
        return nullptr;
    };
    if (s.sym)
        for (const auto* c : s.sym->linearization)
            if (const auto* st = search(*c))
                return st;
    if (const auto* st = search(*s.contract))
        return st;
    if (const auto* st = search(unit.file_scope))
        return st;
    for (const auto& c : unit.contracts)
        if (const auto* st = search(c))
            return st;
    return nullptr;
}

std::optional<TypeName> FileAnalysis::type_of(const Node& n, const FnScope& s) const
{
    switch (n.kind)
    {
    case NodeKind::identifier:
        if (const auto* d = local(n, s))
            return d->type;
        if (const auto* v = state_var(n, s))
            return v->decl->type;
        if (n.text == "now")
            return elementary("uint256");
        if (n.text == "this")
        {
            TypeName t;
            t.category = sol::TypeCategory::user;
            t.name = s.contract->name;
            return t;
        }
        return std::nullopt;
    case NodeKind::literal:
        switch (n.literal_kind)
        {
        case sol::LiteralKind::number:
            return elementary("uint256");
        case sol::LiteralKind::address:
            return elementary("address");
        case sol::LiteralKind::string:
            return elementary("string");
        case sol::LiteralKind::boolean:
            return elementary("bool");
        }
        return std::nullopt;
    case NodeKind::member_access:
    {
        const auto* obj = n.child(0);
        if (is_ident(obj, "msg"))
        {
            if (n.text == "sender")
                return elementary("address");
            if (n.text == "value" || n.text == "gas")
                return elementary("uint256");
            if (n.text == "data")
                return elementary("bytes");
            if (n.text == "sig")
                return elementary("bytes4");
        }
        if (is_ident(obj, "tx"))
            return elementary(n.text == "origin" ? "address" : "uint256");
        if (is_ident(obj, "block"))
            return elementary(n.text == "coinbase" ? "address" : "uint256");
        if (n.text == "length" || n.text == "balance")
            return elementary("uint256");
        if (obj == nullptr)
            return std::nullopt;
        const auto base = type_of(*obj, s);
        if (base && base->category == sol::TypeCategory::user)
            if (const auto* st = struct_named(base->name, s))
                for (const auto& f : st->fields)
                    if (f.name == n.text)
                        return f.type;
        return std::nullopt;
    }
    case NodeKind::index_access:
    {
        const auto* base = n.child(0);
        if (base == nullptr)
            return std::nullopt;
        const auto t = type_of(*base, s);
        if (!t)
            return std::nullopt;
        if (t->category == sol::TypeCategory::mapping && t->args.size() == 2)
            return t->args[1];
        if (t->category == sol::TypeCategory::array && !t->args.empty())
            return t->args[0];
        if (t->category == sol::TypeCategory::elementary && t->name.starts_with("bytes"))
            return elementary("bytes1");
        return std::nullopt;
    }
    case NodeKind::call:
    {
        const auto* callee = n.callee();
        if (callee && callee->kind == NodeKind::identifier)
        {
            if (elementary_type_name(callee->text))
                return elementary(sol::canonical_elementary(callee->text));
            if (callee->text == "payable")
                return elementary("address");
            if (contract_named(callee->text))
            {
                TypeName t;
                t.category = sol::TypeCategory::user;
                t.name = callee->text;
                return t;
            }
            if (callee->text == "keccak256" || callee->text == "sha256" || callee->text == "sha3" ||
                callee->text == "blockhash")
                return elementary("bytes32");
            if (callee->text == "ecrecover")
                return elementary("address");
            if (s.sym)
                for (const auto* c : s.sym->linearization)
                    if (const auto* fn = c->find_function(callee->text); fn && !fn->returns.empty())
                        return fn->returns.front().type;
        }
        if (callee && callee->kind == NodeKind::elementary_type)
            return callee->type;
        return std::nullopt;
    }
    case NodeKind::binary_op:
        if (is_comparison(n) || n.text == "&&" || n.text == "||")
            return elementary("bool");
        for (const auto& c : n.children)
            if (c && c->kind != NodeKind::literal)
                if (auto t = type_of(*c, s))
                    return t;
        return n.child(0) ? type_of(*n.child(0), s) : std::nullopt;
    case NodeKind::unary_op:
        if (n.text == "!")
            return elementary("bool");
        return n.child(0) ? type_of(*n.child(0), s) : std::nullopt;
    case NodeKind::new_expr:
        return n.type;
    case NodeKind::tuple:
        if (n.children.size() == 1 && n.child(0))
            return type_of(*n.child(0), s);
        return std::nullopt;
    case NodeKind::conditional:
        return n.child(1) ? type_of(*n.child(1), s) : std::nullopt;
    default:
        return std::nullopt;
    }
}

const sol::StateVarRef* FileAnalysis::storage_write(const Node& n, const FnScope& s) const
{
    const Node* target = nullptr;
    if (n.kind == NodeKind::assignment)
        target = n.child(0);
    else if (n.kind == NodeKind::unary_op && (n.text == "++" || n.text == "--" || n.text == "delete"))
        target = n.child(0);
    else if (n.kind == NodeKind::call && n.callee() && n.callee()->kind == NodeKind::member_access &&
             (n.callee()->text == "push" || n.callee()->text == "pop"))
        target = n.callee()->child(0);
    if (target == nullptr)
        return nullptr;
    if (target->kind == NodeKind::tuple)
    {
        for (const auto& c : target->children)
            if (c)
                if (const auto* r = root(*c); r)
                    if (const auto* v = state_var(*r, s))
                        return v;
        return nullptr;
    }
    const auto* r = root(*target);
    return r ? state_var(*r, s) : nullptr;
}

bool is_ident(const Node* n, std::string_view name) noexcept
{
    return n && n->kind == NodeKind::identifier && n->text == name;
}

bool is_member(const Node* n, std::string_view member, std::string_view object) noexcept
{
    if (!n || n->kind != NodeKind::member_access || n->text != member)
        return false;
    return object.empty() || is_ident(n->child(0), object);
}

const Node* root(const Node& n) noexcept
{
    const Node* cur = &n;
    while (cur && (cur->kind == NodeKind::member_access || cur->kind == NodeKind::index_access ||
                      (cur->kind == NodeKind::tuple && cur->children.size() == 1)))
        cur = cur->child(0);
    return cur;
}

const Node* strip_address_casts(const Node& n) noexcept
{
    const Node* cur = &n;
    while (cur->kind == NodeKind::call && cur->arg_count() == 1 &&
           (is_ident(cur->callee(), "payable") || is_ident(cur->callee(), "address")) && cur->arg(0))
        cur = cur->arg(0);
    while (cur->kind == NodeKind::tuple && cur->children.size() == 1 && cur->child(0))
        cur = cur->child(0);
    return cur;
}

bool is_comparison(const Node& n) noexcept
{
    if (n.kind != NodeKind::binary_op)
        return false;
    const auto& o = n.text;
    return o == "==" || o == "!=" || o == "<" || o == ">" || o == "<=" || o == ">=";
}

bool is_equality(const Node& n) noexcept
{
    return n.kind == NodeKind::binary_op && (n.text == "==" || n.text == "!=");
}

bool is_arithmetic(const Node& n) noexcept
{
    if (n.kind != NodeKind::binary_op)
        return false;
    const auto& o = n.text;
    return o == "+" || o == "-" || o == "*" || o == "/" || o == "%" || o == "**";
}

bool is_integer_literal(const Node& n) noexcept
{
    return n.kind == NodeKind::literal && n.literal_kind == sol::LiteralKind::number;
}

bool is_block_value(const Node& n) noexcept
{
    return is_ident(&n, "now") || is_member(&n, "timestamp", "block") || is_member(&n, "number", "block");
}

bool contains(const Node& n, const std::function<bool(const Node&)>& pred)
{
    bool found = false;
    sol::walk(n, [&](const Node& x) {
        if (found)
            return false;
        if (pred(x))
            found = true;
        return !found;
    });
    return found;
}

void walk_loops(const Node& n, const std::function<void(const Node&, int)>& visit, int depth)
{
    visit(n, depth);
    const bool loop =
        n.kind == NodeKind::for_stmt || n.kind == NodeKind::while_stmt || n.kind == NodeKind::do_while_stmt;
    for (std::size_t i = 0; i < n.children.size(); ++i)
    {
        if (!n.children[i])
            continue;
        // The for-loop initializer runs once.
        const bool inside = loop && !(n.kind == NodeKind::for_stmt && i == 0);
        walk_loops(*n.children[i], visit, depth + (inside ? 1 : 0));
    }
    for (const auto& o : n.options)
        if (o.value)
            walk_loops(*o.value, visit, depth);
}

std::optional<MemberCall> member_call(const Node& n)
{
    if (!(n.is_call() || n.kind == NodeKind::call_options))
        return std::nullopt;
    const Node* callee = n.kind == NodeKind::call_options ? n.child(0) : n.callee();
    const Node* options_node = nullptr;
    if (callee && callee->kind == NodeKind::call_options)
    {
        options_node = callee;
        callee = callee->child(0);
    }
    if (!callee || callee->kind != NodeKind::member_access)
        return std::nullopt;
    MemberCall c;
    c.node = &n;
    c.target = callee->child(0);
    c.member = callee->text;
    c.invoked = n.kind != NodeKind::call_options;
    for (const auto* holder : {&n, options_node})
    {
        if (!holder)
            continue;
        for (const auto& o : holder->options)
        {
            if (o.name == "value")
                c.value = o.value.get();
            else if (o.name == "gas")
                c.gas = o.value.get();
        }
    }
    return c;
}

bool is_low_level(const MemberCall& c) noexcept
{
    return c.member == "call" || c.member == "send" || c.member == "delegatecall" || c.member == "staticcall" ||
           c.member == "callcode";
}

bool is_ether_send(const MemberCall& c) noexcept
{
    if (!c.invoked)
        return false;
    if ((c.member == "transfer" || c.member == "send") && c.node->arg_count() == 1 && c.node->options.empty())
        return true;
    return c.value != nullptr;
}

const Node* send_amount(const MemberCall& c) noexcept
{
    if (c.value)
        return c.value;
    if ((c.member == "transfer" || c.member == "send") && c.node->arg_count() == 1)
        return c.node->arg(0);
    return nullptr;
}

std::vector<const Node*> guards_before(const Node& body, std::size_t before)
{
    std::vector<const Node*> out;
    sol::walk(body, [&](const Node& n) {
        if (n.span.offset >= before)
            return false;
        if ((n.kind == NodeKind::require_call || n.kind == NodeKind::assert_call) && n.arg(0))
            out.push_back(n.arg(0));
        else if ((n.kind == NodeKind::if_stmt || n.kind == NodeKind::while_stmt || n.kind == NodeKind::conditional) &&
                 n.child(0))
            out.push_back(n.child(0));
        else if (n.kind == NodeKind::for_stmt && n.child(1))
            out.push_back(n.child(1));
        return true;
    });
    return out;
}
}  // namespace swelint::rules
