// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

// Visibility, arithmetic, compiler version, external call and input
// validation rules.

#include "checks.hpp"

#include <algorithm>
#include <functional>
#include <map>

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

bool is_overflow_op(const Node& n)
{
    if (n.kind == NodeKind::binary_op)
        return n.text == "+" || n.text == "-" || n.text == "*" || n.text == "**";
    return false;
}

bool literal_only(const Node& n)
{
    bool only = true;
    sol::walk(n, [&](const Node& x) {
        if (x.kind == NodeKind::identifier || x.kind == NodeKind::member_access || x.kind == NodeKind::call ||
            x.kind == NodeKind::index_access)
            only = false;
        return only;
    });
    return only;
}

bool non_integer_operand(const FileAnalysis& fa, const FnScope& s, const Node& n)
{
    for (const auto& c : n.children)
    {
        if (!c || c->kind == NodeKind::literal)
            continue;
        if (const auto t = fa.type_of(*c, s); t && !t->is_integer())
            return true;
    }
    return false;
}

bool is_constant_bound(const FileAnalysis& fa, const FnScope& s, const Node& n)
{
    if (is_integer_literal(n))
        return true;
    if (n.kind == NodeKind::identifier)
        if (const auto* v = fa.state_var(n, s))
            return v->decl->is_constant || v->decl->is_immutable;
    return false;
}

/// Loop counter update in a for-header that is bounded by a constant.
bool exempt_counter(const FileAnalysis& fa, const FnScope& s, const Node& loop)
{
    const auto* cond = loop.child(1);
    const auto* post = loop.child(2);
    if (!cond || !post || !is_comparison(*cond))
        return false;
    const Node* counter = nullptr;
    if (post->kind == NodeKind::unary_op && (post->text == "++" || post->text == "--"))
        counter = post->child(0);
    else if (post->kind == NodeKind::assignment && (post->text == "+=" || post->text == "-=") && post->child(1) &&
             is_integer_literal(*post->child(1)))
        counter = post->child(0);
    if (!counter || counter->kind != NodeKind::identifier)
        return false;
    const auto* lhs = cond->child(0);
    const auto* rhs = cond->child(1);
    if (is_ident(lhs, counter->text) && rhs && is_constant_bound(fa, s, *rhs))
        return true;
    return is_ident(rhs, counter->text) && lhs && is_constant_bound(fa, s, *lhs);
}

std::string quoted(std::string_view s)
{
    return "'" + std::string(s) + "'";
}

bool is_exact_name_constructor(const ContractDef& c, const FunctionDef& fn)
{
    return fn.kind == FunctionKind::function && !c.name.empty() && fn.name == c.name;
}

/// Initializer expressions assigned to locals, for one-step origin tracking.
std::map<std::string, const Node*> local_sources(const Node& body)
{
    std::map<std::string, const Node*> out;
    sol::walk(body, [&](const Node& n) {
        if (n.kind == NodeKind::var_decl_stmt && n.decls.size() == 1 && n.child(0))
            out[n.decls[0].name] = n.child(0);
        else if (n.kind == NodeKind::assignment && n.text == "=" && n.child(0) &&
                 n.child(0)->kind == NodeKind::identifier && n.child(1))
            out[n.child(0)->text] = n.child(1);
        return true;
    });
    return out;
}
}  // namespace

void check_100(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for (const auto& c : fa.unit.contracts)
    {
        if (c.kind == sol::ContractKind::interface)
            continue;
        for (const auto& fn : c.functions)
        {
            if (fn.kind != FunctionKind::function || fn.visibility != Visibility::unspecified ||
                is_exact_name_constructor(c, fn))
                continue;
            out.push_back(fa.finding(100, fn.name_span, FileAnalysis::construct(c, fn.name),
                "function " + quoted(fn.name) + " has no explicit visibility and defaults to public"));
        }
        for (const auto& v : c.state_vars)
            if (v.visibility == Visibility::unspecified)
                out.push_back(fa.finding(100, v.name_span, FileAnalysis::construct(c, v.name),
                    "state variable " + quoted(v.name) + " has no explicit visibility"));
    }
}

void check_101(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        std::function<void(const Node&, bool, bool)> visit = [&](const Node& n, bool parent_arith, bool guarded) {
            if (n.kind == NodeKind::require_call || n.kind == NodeKind::assert_call)
            {
                for (std::size_t i = 0; i < n.arg_count(); ++i)
                    if (n.arg(i))
                        visit(*n.arg(i), false, guarded || i == 0);
                return;
            }
            if (n.kind == NodeKind::unchecked_block)
                return;
            if (is_arithmetic(n))
            {
                const bool overflow = contains(n, [](const Node& x) { return is_overflow_op(x); });
                if (!parent_arith && !guarded && overflow && !literal_only(n) && !non_integer_operand(fa, s, n))
                    out.push_back(fa.finding(101, n.span, fa.construct(s),
                        "unchecked arithmetic '" + std::string(fa.text(n)) + "' can overflow or underflow"));
                for (const auto& c : n.children)
                    if (c)
                        visit(*c, true, guarded);
                return;
            }
            if (n.kind == NodeKind::assignment && (n.text == "+=" || n.text == "-=" || n.text == "*="))
            {
                const auto lhs_type = n.child(0) ? fa.type_of(*n.child(0), s) : std::nullopt;
                if (!guarded && !parent_arith && (!lhs_type || lhs_type->is_integer()))
                    out.push_back(fa.finding(101, n.span, fa.construct(s),
                        "unchecked compound assignment '" + std::string(fa.text(n)) +
                            "' can overflow or underflow"));
                if (n.child(0))
                    visit(*n.child(0), false, guarded);
                if (n.child(1))
                    visit(*n.child(1), true, guarded);
                return;
            }
            if (n.kind == NodeKind::unary_op && (n.text == "++" || n.text == "--"))
            {
                const auto t = n.child(0) ? fa.type_of(*n.child(0), s) : std::nullopt;
                if (!guarded && !parent_arith && (!t || t->is_integer()))
                    out.push_back(fa.finding(101, n.span, fa.construct(s),
                        "unchecked '" + std::string(fa.text(n)) + "' can overflow or underflow"));
                return;
            }
            if (n.kind == NodeKind::for_stmt)
            {
                const bool exempt = exempt_counter(fa, s, n);
                for (std::size_t i = 0; i < n.children.size(); ++i)
                    if (n.children[i])
                        visit(*n.children[i], exempt && i == 2, guarded);
                return;
            }
            for (const auto& c : n.children)
                if (c)
                    visit(*c, false, guarded);
            for (const auto& o : n.options)
                if (o.value)
                    visit(*o.value, false, guarded);
        };
        visit(body, false, false);
    });
}

void check_102(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    const auto& min = fa.options.minimum_compiler;
    for (const auto& p : fa.unit.pragmas)
        if (p.admissible.admits_below(min))
            out.push_back(fa.finding(102, p.span, "pragma",
                "pragma '" + p.text + "' admits compiler versions older than " + min.str()));
}

void check_103(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for (const auto& p : fa.unit.pragmas)
        if (p.floating)
            out.push_back(fa.finding(103, p.span, "pragma",
                "floating pragma '" + p.text + "'; pin an exact compiler version"));
}

void check_104(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        sol::walk(body, [&](const Node& n) {
            if (n.kind != NodeKind::expression_stmt || !n.child(0))
                return true;
            const auto mc = member_call(*n.child(0));
            if (mc && mc->invoked && is_low_level(*mc))
                out.push_back(fa.finding(104, mc->node->span, fa.construct(s),
                    "return value of low-level '" + mc->member + "' is not checked"));
            return true;
        });
    });
}

void check_107(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        std::vector<const Node*> calls;
        std::vector<std::pair<std::size_t, const VarDecl*>> writes;
        sol::walk(body, [&](const Node& n) {
            if (const auto mc = member_call(n); mc && mc->invoked && mc->member == "call" && !mc->gas)
                calls.push_back(&n);
            if (const auto* w = fa.storage_write(n, s))
                writes.emplace_back(n.span.offset, w->decl);
            return true;
        });
        for (const auto* call : calls)
        {
            const auto write = std::find_if(writes.begin(), writes.end(),
                [&](const auto& w) { return w.first >= call->span.end(); });
            if (write == writes.end())
                continue;
            out.push_back(fa.finding(107, call->span, fa.construct(s),
                "external call forwards gas before state variable '" + write->second->name +
                    "' is updated; the callee can re-enter"));
        }
    });
}

void check_109(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        sol::walk(body, [&](const Node& n) {
            if (n.kind != NodeKind::var_decl_stmt || n.decls.size() != 1 || n.child(0))
                return true;
            const auto& d = n.decls[0];
            if (d.location != sol::DataLocation::unspecified)
                return true;
            const bool reference = d.type.category == sol::TypeCategory::array ||
                                   (d.type.category == sol::TypeCategory::user && fa.struct_named(d.type.name, s));
            if (reference)
                out.push_back(fa.finding(109, n.span, fa.construct(s),
                    "local " + quoted(d.name) + " of type " + d.type.name +
                        " is an uninitialized storage pointer"));
            return true;
        });
    });
}

void check_110(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        sol::walk(body, [&](const Node& n) {
            if (n.kind != NodeKind::assert_call || !n.arg(0))
                return true;
            const bool input = contains(*n.arg(0), [&](const Node& x) {
                return fa.is_parameter(x, s) || (x.kind == NodeKind::member_access && is_ident(x.child(0), "msg"));
            });
            if (input)
                out.push_back(fa.finding(110, n.span, fa.construct(s),
                    "assert() validates caller input; use require() for input checks"));
            return true;
        });
    });
}

void check_111(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    auto scan = [&](const Node& root_node, const std::string& construct) {
        sol::walk(root_node, [&](const Node& n) {
            std::string what;
            if (n.kind == NodeKind::throw_stmt)
                what = "'throw' is deprecated; use revert()";
            else if (n.is_call() && is_ident(n.callee(), "suicide"))
                what = "'suicide' is deprecated; use selfdestruct";
            else if (n.is_call() && is_ident(n.callee(), "sha3"))
                what = "'sha3' is deprecated; use keccak256";
            else if (is_member(&n, "callcode"))
                what = "'callcode' is deprecated; use delegatecall";
            else if (is_member(&n, "gas", "msg"))
                what = "'msg.gas' is deprecated; use gasleft()";
            else if (is_member(&n, "blockhash", "block"))
                what = "'block.blockhash' is deprecated; use blockhash()";
            else if (n.kind == NodeKind::var_decl_stmt &&
                     std::any_of(n.decls.begin(), n.decls.end(), [](const VarDecl& d) { return d.type.name == "var"; }))
                what = "'var' declarations are deprecated";
            if (!what.empty())
                out.push_back(fa.finding(111, n.span, construct, what));
            return true;
        });
    };
    for (const auto& s : fa.scopes())
    {
        if (s.fn->mutability == sol::Mutability::constant_modifier)
            out.push_back(fa.finding(111, s.fn->name_span, fa.construct(s),
                "'constant' on functions is deprecated; use view or pure"));
        if (s.fn->body)
            scan(*s.fn->body, fa.construct(s));
    }
    for (const auto* c : fa.unit.scopes())
        for (const auto& v : c->state_vars)
            if (v.initializer)
                scan(*v.initializer, FileAnalysis::construct(*c, v.name));
}

void check_112(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        const auto sources = local_sources(body);
        std::function<bool(const Node&, int)> untrusted = [&](const Node& e, int depth) {
            return contains(e, [&](const Node& x) {
                if (x.kind != NodeKind::identifier)
                    return false;
                if (fa.is_parameter(x, s))
                    return true;
                if (const auto* v = fa.state_var(x, s))
                    return !v->decl->is_constant && !v->decl->is_immutable;
                if (depth < 3 && fa.local(x, s))
                    if (const auto it = sources.find(x.text); it != sources.end() && it->second != &e)
                        return untrusted(*it->second, depth + 1);
                return false;
            });
        };
        sol::walk(body, [&](const Node& n) {
            const auto mc = member_call(n);
            if (!mc || !mc->invoked || mc->member != "delegatecall" || !mc->target)
                return true;
            if (untrusted(*mc->target, 0))
                out.push_back(fa.finding(112, n.span, fa.construct(s),
                    "delegatecall target '" + std::string(fa.text(*mc->target)) +
                        "' is controlled by a caller or by mutable storage"));
            return true;
        });
    });
}

void check_113(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        walk_loops(body, [&](const Node& n, int depth) {
            if (depth == 0)
                return;
            if (const auto mc = member_call(n); mc && is_ether_send(*mc))
                out.push_back(fa.finding(113, n.span, fa.construct(s),
                    "ether sent inside a loop; one failing recipient blocks every payment"));
        });
    });
}

void check_114(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        auto param_vs_storage = [&](const Node& cond) -> const Node* {
            const Node* hit = nullptr;
            sol::walk(cond, [&](const Node& x) {
                if (hit || x.kind != NodeKind::binary_op || x.text != "==")
                    return !hit;
                const auto* a = x.child(0);
                const auto* b = x.child(1);
                if (!a || !b)
                    return true;
                if ((fa.is_parameter(*a, s) && fa.state_var(*b, s)) || (fa.is_parameter(*b, s) && fa.state_var(*a, s)))
                    hit = &x;
                return !hit;
            });
            return hit;
        };
        auto sends_ether = [&](const Node& n) {
            return contains(n, [](const Node& x) {
                const auto mc = member_call(x);
                return mc && is_ether_send(*mc);
            });
        };
        sol::walk(body, [&](const Node& n) {
            if (n.kind == NodeKind::if_stmt && n.child(0) && n.child(1))
            {
                if (const auto* cmp = param_vs_storage(*n.child(0)); cmp && sends_ether(*n.child(1)))
                    out.push_back(fa.finding(114, cmp->span, fa.construct(s),
                        "ether transfer depends on '" + std::string(fa.text(*cmp)) +
                            "'; a front-runner can submit the matching value first"));
            }
            else if (n.kind == NodeKind::require_call && n.arg(0))
            {
                if (const auto* cmp = param_vs_storage(*n.arg(0)))
                {
                    bool later_send = false;
                    sol::walk(body, [&](const Node& x) {
                        if (x.span.offset > n.span.end())
                            if (const auto mc = member_call(x); mc && is_ether_send(*mc))
                                later_send = true;
                        return !later_send;
                    });
                    if (later_send)
                        out.push_back(fa.finding(114, cmp->span, fa.construct(s),
                            "ether transfer depends on '" + std::string(fa.text(*cmp)) +
                                "'; a front-runner can submit the matching value first"));
                }
            }
            return true;
        });
    });
}

void check_115(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        auto scan = [&](const Node& cond) {
            sol::walk(cond, [&](const Node& x) {
                if (!is_equality(x) || !x.child(0) || !x.child(1))
                    return true;
                const bool left = is_member(x.child(0), "origin", "tx");
                const bool right = is_member(x.child(1), "origin", "tx");
                if (left != right)
                    out.push_back(fa.finding(115, x.span, fa.construct(s),
                        "authorization through tx.origin; use msg.sender"));
                return true;
            });
        };
        sol::walk(body, [&](const Node& n) {
            if ((n.kind == NodeKind::require_call || n.kind == NodeKind::assert_call) && n.arg(0))
                scan(*n.arg(0));
            else if ((n.kind == NodeKind::if_stmt || n.kind == NodeKind::while_stmt) && n.child(0))
                scan(*n.child(0));
            return true;
        });
    });
}

void check_116(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        std::vector<std::pair<std::size_t, std::size_t>> covered;
        sol::walk(body, [&](const Node& n) {
            if (is_comparison(n) && contains(n, [](const Node& x) { return is_block_value(x); }))
            {
                out.push_back(fa.finding(116, n.span, fa.construct(s),
                    "comparison '" + std::string(fa.text(n)) + "' relies on a miner-influenced block value"));
                covered.emplace_back(n.span.offset, n.span.end());
                return false;
            }
            return true;
        });
        auto in_covered = [&](const Node& x) {
            return std::any_of(covered.begin(), covered.end(),
                [&](const auto& c) { return x.span.offset >= c.first && x.span.end() <= c.second; });
        };
        auto scan_condition = [&](const Node& cond) {
            sol::walk(cond, [&](const Node& x) {
                if (is_block_value(x) && !in_covered(x))
                {
                    out.push_back(fa.finding(116, x.span, fa.construct(s),
                        "branch condition relies on '" + std::string(fa.text(x)) + "', a miner-influenced block value"));
                    covered.emplace_back(x.span.offset, x.span.end());
                }
                return true;
            });
        };
        sol::walk(body, [&](const Node& n) {
            if ((n.kind == NodeKind::require_call || n.kind == NodeKind::assert_call) && n.arg(0))
                scan_condition(*n.arg(0));
            else if ((n.kind == NodeKind::if_stmt || n.kind == NodeKind::while_stmt ||
                         n.kind == NodeKind::conditional) &&
                     n.child(0))
                scan_condition(*n.child(0));
            else if (n.kind == NodeKind::for_stmt && n.child(1))
                scan_condition(*n.child(1));
            return true;
        });
    });
}

void check_117(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        sol::walk(body, [&](const Node& n) {
            if (!n.is_call() || !is_ident(n.callee(), "ecrecover") || n.arg_count() < 4 || !n.arg(3))
                return true;
            const auto s_text = fa.text(*n.arg(3));
            const bool constrained = contains(body, [&](const Node& x) {
                if (!is_comparison(x))
                    return false;
                for (const auto& side : x.children)
                    if (side && contains(*side, [&](const Node& y) { return fa.text(y) == s_text; }))
                        return true;
                return false;
            });
            if (!constrained)
                out.push_back(fa.finding(117, n.span, fa.construct(s),
                    "ecrecover accepts malleable signatures; '" + std::string(s_text) +
                        "' is never restricted to the lower half order"));
            return true;
        });
    });
}

void check_118(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for (const auto& c : fa.unit.contracts)
    {
        if (c.kind != sol::ContractKind::contract)
            continue;
        const bool has_ctor = std::any_of(c.functions.begin(), c.functions.end(), [&](const FunctionDef& f) {
            return f.kind == FunctionKind::constructor || is_exact_name_constructor(c, f);
        });
        if (has_ctor)
            continue;
        for (const auto& f : c.functions)
            if (f.kind == FunctionKind::function && f.name != c.name && to_lower(f.name) == to_lower(c.name))
                out.push_back(fa.finding(118, f.name_span, FileAnalysis::construct(c, f.name),
                    "function " + quoted(f.name) + " looks like a constructor of " + c.name +
                        " but its name differs in case; anyone can call it"));
    }
}

void check_119(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for (const auto& p : fa.symbols.shadowing)
    {
        const auto shadowed = FileAnalysis::construct(*p.shadowed_owner, p.shadowed->name);
        if (p.function)
        {
            std::string member = p.function->name.empty() ? "constructor" : p.function->name;
            out.push_back(fa.finding(119, p.derived->name_span, FileAnalysis::construct(*p.derived_owner, member),
                "local " + quoted(p.derived->name) + " shadows state variable " + shadowed));
        }
        else
            out.push_back(fa.finding(119, p.derived->name_span,
                FileAnalysis::construct(*p.derived_owner, p.derived->name),
                "state variable " + quoted(p.derived->name) + " shadows inherited " + shadowed));
    }
}
}  // namespace swelint::rules
