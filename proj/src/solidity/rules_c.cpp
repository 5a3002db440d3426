// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

// Proxy, typing, token, division, dependency, naming and validation rules.

#include "checks.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace swelint::rules
{
namespace
{
using sol::FunctionKind;
using sol::Visibility;

template <typename Fn>
void for_each_body(const FileAnalysis& fa, Fn fn)
{
    for (const auto& s : fa.scopes())
        if (s.fn->body)
            fn(s, *s.fn->body);
}

constexpr std::array<std::string_view, 16> builtin_symbols{"require", "assert", "revert", "msg", "tx", "block",
    "now", "this", "super", "selfdestruct", "keccak256", "sha256", "ecrecover", "addmod", "mulmod", "gasleft"};

bool is_builtin_symbol(std::string_view name)
{
    return std::find(builtin_symbols.begin(), builtin_symbols.end(), name) != builtin_symbols.end();
}

bool is_balance_name(std::string_view name)
{
    return icontains(name, "balance");
}

bool is_address_like(const FileAnalysis& fa, const FnScope& s, const Node& n)
{
    const auto t = fa.type_of(n, s);
    return t && t->is_address();
}

bool compares_with_zero_address(const Node& cond, std::string_view name)
{
    return contains(cond, [&](const Node& x) {
        if (!is_equality(x) && !is_comparison(x))
            return false;
        bool names = false;
        bool zero = false;
        for (const auto& side : x.children)
        {
            if (!side)
                continue;
            const auto* v = strip_address_casts(*side);
            if (is_ident(v, name))
                names = true;
            if (side->is_call() && is_ident(side->callee(), "address") && side->arg(0) &&
                side->arg(0)->kind == NodeKind::literal && side->arg(0)->text == "0")
                zero = true;
            if (v->kind == NodeKind::literal && (v->text == "0" || v->text == "0x0"))
                zero = true;
        }
        return names && zero;
    });
}

const Node* external_contract_call_target(const FileAnalysis& fa, const FnScope& s, const Node& n)
{
    if (!n.is_call() || !n.callee() || n.callee()->kind != NodeKind::member_access)
        return nullptr;
    const auto* obj = n.callee()->child(0);
    if (!obj)
        return nullptr;
    if (obj->is_call() && obj->arg_count() == 1 && obj->callee() && obj->callee()->kind == NodeKind::identifier)
        if (const auto* c = fa.contract_named(obj->callee()->text); c && c->kind != sol::ContractKind::library)
            return obj;
    const auto t = fa.type_of(*obj, s);
    if (t && t->category == sol::TypeCategory::user)
        if (const auto* c = fa.contract_named(t->name); c && c->kind != sol::ContractKind::library)
            return obj;
    return nullptr;
}

std::string quoted(std::string_view s)
{
    return "'" + std::string(s) + "'";
}

/// `fn` assigns to an unshadowed identifier called `name`.
bool assigns_name(const sol::FunctionDef& fn, std::string_view name)
{
    const auto hides = [&](const std::vector<VarDecl>& vs) {
        return std::any_of(vs.begin(), vs.end(), [&](const VarDecl& v) { return v.name == name; });
    };
    if (hides(fn.params) || hides(fn.returns))
        return false;
    return contains(*fn.body, [&](const Node& n) {
        if (n.kind != NodeKind::assignment || !n.child(0))
            return false;
        const auto* r = root(*n.child(0));
        return is_ident(r, name);
    });
}

const char* const kHardcodedNote = " (see also SWE-145 for hardcoded or unchecked addresses)";
}  // namespace

void check_141(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        if (!s.sym)
            return;
        sol::walk(body, [&](const Node& n) {
            const auto mc = member_call(n);
            if (!mc || !mc->invoked || mc->member != "delegatecall" || !mc->target)
                return true;
            const auto* r = root(*strip_address_casts(*mc->target));
            const auto* var = r ? fa.state_var(*r, s) : nullptr;
            if (!var || var->decl->is_constant || var->decl->is_immutable)
                return true;
            std::string setter;
            for (const auto* c : s.sym->linearization)
                for (const auto& f : c->functions)
                    if (f.body && &f != s.fn && f.kind == FunctionKind::function && f.name != c->name &&
                        f.visibility != Visibility::private_ && f.visibility != Visibility::internal &&
                        assigns_name(f, var->decl->name))
                        setter = f.name;
            if (!setter.empty())
                out.push_back(fa.finding(141, n.span, fa.construct(s),
                    "delegatecall target '" + var->decl->name + "' can be replaced through '" + setter +
                        "'; storage layouts of proxy and implementation may collide"));
            return true;
        });
    });
}

void check_142(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        sol::walk(body, [&](const Node& n) {
            if (!n.is_call() || n.arg_count() != 1 || !n.callee() || n.callee()->kind != NodeKind::identifier ||
                !n.arg(0))
                return true;
            const auto* c = fa.contract_named(n.callee()->text);
            if (!c || c->kind == sol::ContractKind::library)
                return true;
            const auto* arg = strip_address_casts(*n.arg(0));
            if (arg->kind != NodeKind::identifier || !is_address_like(fa, s, *arg))
                return true;
            if (!fa.is_parameter(*arg, s) && !fa.state_var(*arg, s))
                return true;
            out.push_back(fa.finding(142, n.span, fa.construct(s),
                "address '" + arg->text + "' is cast to " + c->name + " without verifying the deployed code"));
            return true;
        });
    });
}

void check_143(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        sol::walk(body, [&](const Node& n) {
            const auto mc = member_call(n);
            if (!mc || !is_ether_send(*mc) || !mc->target)
                return true;
            const auto* r = root(*strip_address_casts(*mc->target));
            if (!r || r->kind != NodeKind::identifier)
                return true;
            const bool arbitrary = fa.is_parameter(*r, s) || fa.state_var(*r, s) || fa.is_undeclared(*r, s);
            if (arbitrary)
                out.push_back(fa.finding(143, n.span, fa.construct(s),
                    "ether is sent to '" + std::string(fa.text(*mc->target)) +
                        "', an address that is not restricted to msg.sender"));
            return true;
        });
    });
}

void check_144(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        sol::walk(body, [&](const Node& n) {
            if (n.kind == NodeKind::assembly)
            {
                out.push_back(fa.finding(144, n.span, fa.construct(s),
                    "inline assembly bypasses the compiler's safety checks"));
                return false;
            }
            return true;
        });
    });
}

void check_146(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for (const auto& c : fa.unit.contracts)
    {
        const bool keyword = std::any_of(c.functions.begin(), c.functions.end(),
            [](const sol::FunctionDef& f) { return f.kind == FunctionKind::constructor; });
        const bool named = std::any_of(c.functions.begin(), c.functions.end(),
            [&](const sol::FunctionDef& f) { return f.kind == FunctionKind::function && f.name == c.name; });
        if (keyword && named)
            out.push_back(fa.finding(146, c.name_span, c.name,
                "contract " + quoted(c.name) + " declares both a constructor and a function named " + c.name +
                    "; only one of them runs at deployment"));
    }
}

void check_148(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    static const std::set<std::string, std::less<>> token_ops{"transfer", "transferFrom", "approve", "mint", "burn"};
    for (const auto& s : fa.scopes())
    {
        if (!s.fn->body || s.fn->kind != FunctionKind::function || token_ops.count(s.fn->name) == 0)
            continue;
        const bool writes_mapping = contains(*s.fn->body, [&](const Node& n) {
            const auto* w = fa.storage_write(n, s);
            return w && w->decl->type.category == sol::TypeCategory::mapping;
        });
        if (!writes_mapping)
            continue;
        std::set<std::string> events;
        for (const auto* c : s.sym ? s.sym->linearization : std::vector<const ContractDef*>{s.contract})
            for (const auto& e : c->events)
                events.insert(e.name);
        const bool emits = contains(*s.fn->body, [&](const Node& n) {
            if (n.kind == NodeKind::emit_stmt)
                return true;
            return n.is_call() && n.callee() && n.callee()->kind == NodeKind::identifier &&
                   events.count(n.callee()->text) > 0;
        });
        if (!emits)
            out.push_back(fa.finding(148, s.fn->name_span, fa.construct(s),
                "token function " + quoted(s.fn->name) + " changes balances without emitting an event"));
    }
}

void check_150(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        auto report_divisions = [&](const Node& expr) {
            sol::walk(expr, [&](const Node& x) {
                if (x.kind == NodeKind::binary_op && x.text == "/" && x.child(1) && is_integer_literal(*x.child(1)))
                    out.push_back(fa.finding(150, x.span, fa.construct(s),
                        "integer division '" + std::string(fa.text(x)) + "' truncates and loses value"));
                return true;
            });
        };
        sol::walk(body, [&](const Node& n) {
            if (n.kind == NodeKind::assignment && n.child(0) && n.child(1) &&
                n.child(0)->kind == NodeKind::index_access)
            {
                const auto* r = root(*n.child(0));
                if (r && r->kind == NodeKind::identifier && is_balance_name(r->text))
                    report_divisions(*n.child(1));
            }
            else if (const auto mc = member_call(n); mc && is_ether_send(*mc))
            {
                if (const auto* amt = send_amount(*mc))
                    report_divisions(*amt);
            }
            return true;
        });
    });
}

void check_151(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        sol::walk(body, [&](const Node& n) {
            const Node* denom = nullptr;
            if (n.kind == NodeKind::binary_op && (n.text == "/" || n.text == "%"))
                denom = n.child(1);
            else if (n.kind == NodeKind::assignment && (n.text == "/=" || n.text == "%="))
                denom = n.child(1);
            if (!denom || denom->kind == NodeKind::literal)
                return true;
            if (denom->kind == NodeKind::identifier)
                if (const auto* v = fa.state_var(*denom, s); v && (v->decl->is_constant || v->decl->is_immutable))
                    return true;
            const auto denom_text = fa.text(*denom);
            const auto guards = guards_before(body, n.span.offset);
            const bool guarded = std::any_of(guards.begin(), guards.end(), [&](const Node* g) {
                return contains(*g, [&](const Node& x) {
                    return is_comparison(x) && contains(x, [&](const Node& y) { return fa.text(y) == denom_text; });
                });
            });
            if (!guarded)
                out.push_back(fa.finding(151, n.span, fa.construct(s),
                    "division by '" + std::string(denom_text) + "' which is never checked against zero"));
            return true;
        });
    });
}

void check_152(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    static const std::set<std::string, std::less<>> erc20{"transfer", "transferFrom", "approve"};
    for (const auto& s : fa.scopes())
    {
        if (s.fn->kind != FunctionKind::function || erc20.count(s.fn->name) == 0)
            continue;
        if (s.fn->returns.size() != 1 || s.fn->returns[0].type.name != "bool")
        {
            out.push_back(fa.finding(152, s.fn->name_span, fa.construct(s),
                "'" + s.fn->name + "' does not return bool as the token standard requires"));
            continue;
        }
        if (!s.fn->body)
            continue;
        const Node* restriction = nullptr;
        auto literal_bound = [&](const Node& cond) {
            return contains(cond, [&](const Node& x) {
                if (!is_comparison(x) || !x.child(0) || !x.child(1))
                    return false;
                const auto* a = x.child(0);
                const auto* b = x.child(1);
                auto int_param = [&](const Node& p) {
                    if (!fa.is_parameter(p, s))
                        return false;
                    const auto t = fa.type_of(p, s);
                    return t && t->is_integer();
                };
                return (int_param(*a) && is_integer_literal(*b)) || (int_param(*b) && is_integer_literal(*a));
            });
        };
        sol::walk(*s.fn->body, [&](const Node& n) {
            if (restriction)
                return false;
            if (n.kind == NodeKind::require_call && n.arg(0) && literal_bound(*n.arg(0)))
                restriction = &n;
            else if (n.kind == NodeKind::if_stmt && n.child(0) && n.child(1) && literal_bound(*n.child(0)) &&
                     contains(*n.child(1), [](const Node& x) {
                         return x.kind == NodeKind::revert_stmt || x.kind == NodeKind::throw_stmt ||
                                (x.is_call() && is_ident(x.callee(), "revert"));
                     }))
                restriction = &n;
            return true;
        });
        if (restriction)
            out.push_back(fa.finding(152, s.fn->name_span, fa.construct(s),
                "'" + s.fn->name + "' adds restrictions beyond the token standard ('" +
                    std::string(fa.text(*restriction)) + "')"));
    }
}

void check_153(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    auto admissible = sol::VersionSet::all();
    for (const auto& p : fa.unit.pragmas)
        admissible = admissible.intersect(p.admissible);
    for (const auto& imp : fa.unit.imports)
        for (const auto& adv : fa.options.advisories)
        {
            if (adv.import_path_pattern.empty() || !imp.path.starts_with(adv.import_path_pattern))
                continue;
            if (admissible.intersect(adv.affected_set).empty())
                continue;
            auto f = fa.finding(153, imp.span, "import",
                "import '" + imp.path + "' matches advisory " + adv.id + ": " + adv.description);
            f.severity = adv.severity;
            out.push_back(std::move(f));
        }
}

void check_154(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    auto report = [&](const Span& span, const std::string& construct, std::string_view kind, std::string_view name) {
        out.push_back(fa.finding(154, span, construct,
            std::string(kind) + " " + quoted(name) + " shadows a built-in symbol"));
    };
    for (const auto* c : fa.unit.scopes())
    {
        for (const auto& v : c->state_vars)
            if (is_builtin_symbol(v.name))
                report(v.name_span, FileAnalysis::construct(*c, v.name), "state variable", v.name);
        for (const auto& e : c->events)
            if (is_builtin_symbol(e.name))
                report(e.span, FileAnalysis::construct(*c, e.name), "event", e.name);
        for (const auto& st : c->structs)
            if (is_builtin_symbol(st.name))
                report(st.span, FileAnalysis::construct(*c, st.name), "struct", st.name);
    }
    for (const auto& s : fa.scopes())
    {
        const auto construct = fa.construct(s);
        if (is_builtin_symbol(s.fn->name))
            report(s.fn->name_span, construct, s.fn->kind == FunctionKind::modifier ? "modifier" : "function",
                s.fn->name);
        for (const auto& p : s.fn->params)
            if (is_builtin_symbol(p.name))
                report(p.name_span, construct, "parameter", p.name);
        if (!s.fn->body)
            continue;
        sol::walk(*s.fn->body, [&](const Node& n) {
            if (n.kind == NodeKind::var_decl_stmt)
                for (const auto& d : n.decls)
                    if (is_builtin_symbol(d.name))
                        report(d.name_span, construct, "local variable", d.name);
            return true;
        });
    }
}

void check_155(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    auto scan = [&](const Node& root_node, const std::string& construct) {
        sol::walk(root_node, [&](const Node& n) {
            if (n.kind == NodeKind::literal && n.literal_kind == sol::LiteralKind::address)
                out.push_back(fa.finding(155, n.span, construct,
                    "hardcoded address " + n.text + " cannot follow redeployments" + kHardcodedNote));
            return true;
        });
    };
    for (const auto* c : fa.unit.scopes())
        for (const auto& v : c->state_vars)
            if (v.initializer)
                scan(*v.initializer, FileAnalysis::construct(*c, v.name));
    for_each_body(fa, [&](const FnScope& s, const Node& body) { scan(body, fa.construct(s)); });
}

void check_156(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        auto unchecked = [&](const Node& at, std::string_view name) {
            const auto guards = guards_before(body, at.span.offset);
            return std::none_of(guards.begin(), guards.end(),
                [&](const Node* g) { return compares_with_zero_address(*g, name); });
        };
        sol::walk(body, [&](const Node& n) {
            if (const auto mc = member_call(n); mc && is_ether_send(*mc) && mc->target)
            {
                const auto* t = strip_address_casts(*mc->target);
                if (t->kind == NodeKind::identifier && fa.is_parameter(*t, s) && is_address_like(fa, s, *t) &&
                    unchecked(n, t->text))
                    out.push_back(fa.finding(156, n.span, fa.construct(s),
                        "ether sent to '" + t->text + "' which may be the zero address" + kHardcodedNote));
                return true;
            }
            if (n.kind != NodeKind::assignment || !n.child(0) || n.child(0)->kind != NodeKind::index_access)
                return true;
            const auto* lhs = n.child(0);
            const auto* key = lhs->child(1);
            const auto* base = lhs->child(0);
            if (!key || !base || key->kind != NodeKind::identifier || !fa.is_parameter(*key, s))
                return true;
            const auto* var = fa.state_var(*base, s);
            if (!var || var->decl->type.category != sol::TypeCategory::mapping || var->decl->type.args.size() != 2)
                return true;
            if (!var->decl->type.args[0].is_address() || !var->decl->type.args[1].is_integer())
                return true;
            if (unchecked(n, key->text))
                out.push_back(fa.finding(156, n.span, fa.construct(s),
                    "'" + var->decl->name + "' is credited to '" + key->text +
                        "' which may be the zero address" + kHardcodedNote));
            return true;
        });
    });
}

void check_157(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        walk_loops(body, [&](const Node& n, int depth) {
            if (depth == 0 || !n.is_call())
                return;
            const auto mc = member_call(n);
            const bool raw = mc && mc->invoked && (is_low_level(*mc) || is_ether_send(*mc));
            if (raw || external_contract_call_target(fa, s, n))
                out.push_back(fa.finding(157, n.span, fa.construct(s),
                    "external call '" + std::string(fa.text(n)) +
                        "' inside a loop; one failing callee stops the whole loop"));
        });
    });
}

void check_160(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        const bool branches = contains(body, [](const Node& n) {
            return n.kind == NodeKind::require_call || n.kind == NodeKind::assert_call || n.kind == NodeKind::if_stmt;
        });
        sol::walk(body, [&](const Node& n) {
            if (n.kind == NodeKind::assembly)
            {
                const bool extcode = std::any_of(n.raw_tokens.begin(), n.raw_tokens.end(),
                    [](const sol::Token& t) { return t.text == "extcodesize"; });
                if (extcode && branches)
                    out.push_back(fa.finding(160, n.span, fa.construct(s),
                        "extcodesize is zero during construction; this check does not exclude contracts"));
                return false;
            }
            if (is_comparison(n) && contains(n, [](const Node& x) {
                    return is_member(&x, "length") && x.child(0) && is_member(x.child(0), "code");
                }))
                out.push_back(fa.finding(160, n.span, fa.construct(s),
                    "code length is zero during construction; this check does not exclude contracts"));
            return true;
        });
    });
}

void check_161(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        sol::walk(body, [&](const Node& n) {
            const Node* target = nullptr;
            if (n.kind == NodeKind::assignment)
                target = n.child(0);
            else if (n.kind == NodeKind::unary_op && (n.text == "++" || n.text == "--"))
                target = n.child(0);
            if (target && is_member(target, "length"))
                out.push_back(fa.finding(161, n.span, fa.construct(s),
                    "direct write to array length '" + std::string(fa.text(n)) + "'"));
            return true;
        });
    });
}
}  // namespace swelint::rules
