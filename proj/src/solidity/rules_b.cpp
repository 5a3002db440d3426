// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

// Randomness, signatures, storage, inheritance, gas and access control rules.

#include "checks.hpp"

#include <algorithm>
#include <functional>
#include <map>
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

bool is_block_attribute(const Node& n)
{
    if (is_ident(&n, "now"))
        return true;
    if (n.is_call() && is_ident(n.callee(), "blockhash"))
        return true;
    if (n.kind != NodeKind::member_access || !is_ident(n.child(0), "block"))
        return false;
    return n.text == "timestamp" || n.text == "number" || n.text == "difficulty" || n.text == "blockhash" ||
           n.text == "prevrandao" || n.text == "coinbase";
}

bool is_hash_call(const Node& n)
{
    return n.is_call() &&
           (is_ident(n.callee(), "keccak256") || is_ident(n.callee(), "sha3") || is_ident(n.callee(), "sha256"));
}

bool is_abi_encode_with(const Node* n)
{
    if (!n || !n->is_call())
        return false;
    const auto* c = n->callee();
    return is_member(c, "encodeWithSignature", "abi") || is_member(c, "encodeWithSelector", "abi") ||
           is_member(c, "encodeCall", "abi");
}

bool writes_storage(const FileAnalysis& fa, const FnScope& s, const Node& n)
{
    return contains(n, [&](const Node& x) { return fa.storage_write(x, s) != nullptr; });
}

bool is_function_type(const FileAnalysis& fa, const FnScope* s, const TypeName& t)
{
    if (t.category == sol::TypeCategory::function)
        return true;
    if (t.category == sol::TypeCategory::user && s)
        if (const auto* st = fa.struct_named(t.name, *s))
            return std::any_of(st->fields.begin(), st->fields.end(),
                [](const VarDecl& f) { return f.type.category == sol::TypeCategory::function; });
    return false;
}

bool is_this_balance(const Node* n)
{
    if (!n || n->kind != NodeKind::member_access || n->text != "balance" || !n->child(0))
        return false;
    return is_ident(strip_address_casts(*n->child(0)), "this");
}

bool mentions_msg_sender(const Node& n)
{
    return contains(n, [](const Node& x) {
        if (!is_comparison(x))
            return false;
        return contains(x, [](const Node& y) { return is_member(&y, "sender", "msg"); });
    });
}

bool is_ether_moving_call(const Node& n)
{
    if (n.is_call() && (is_ident(n.callee(), "selfdestruct") || is_ident(n.callee(), "suicide")))
        return true;
    const auto mc = member_call(n);
    if (!mc)
        return false;
    return mc->member == "transfer" || mc->member == "send" || mc->member == "call" ||
           mc->member == "delegatecall" || mc->member == "callcode";
}

std::string quoted(std::string_view s)
{
    return "'" + std::string(s) + "'";
}
}  // namespace

void check_120(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        std::function<void(const Node&, bool)> visit = [&](const Node& n, bool parent_arith) {
            if (is_arithmetic(n))
            {
                if (!parent_arith && contains(n, [](const Node& x) { return x.kind == NodeKind::binary_op && x.text == "%"; }) &&
                    contains(n, is_block_attribute))
                {
                    out.push_back(fa.finding(120, n.span, fa.construct(s),
                        "randomness derived from block attributes in '" + std::string(fa.text(n)) +
                            "' is predictable"));
                    return;
                }
                for (const auto& c : n.children)
                    if (c)
                        visit(*c, true);
                return;
            }
            if (is_hash_call(n))
            {
                for (std::size_t i = 0; i < n.arg_count(); ++i)
                    if (n.arg(i) && contains(*n.arg(i), is_block_attribute))
                    {
                        out.push_back(fa.finding(120, n.span, fa.construct(s),
                            "hash of block attributes '" + std::string(fa.text(n)) +
                                "' is a predictable source of randomness"));
                        return;
                    }
            }
            for (const auto& c : n.children)
                if (c)
                    visit(*c, false);
            for (const auto& o : n.options)
                if (o.value)
                    visit(*o.value, false);
        };
        visit(body, false);
    });
}

void check_121(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        bool replay_guard = false;
        sol::walk(body, [&](const Node& n) {
            if (replay_guard)
                return false;
            if (n.kind != NodeKind::assignment || !fa.storage_write(n, s))
                return true;
            const auto* lhs = n.child(0);
            if (!lhs || lhs->kind != NodeKind::index_access || !lhs->child(1))
                return true;
            const auto* idx = lhs->child(1);
            const auto t = fa.type_of(*idx, s);
            if ((t && t->name == "bytes32") || contains(*idx, is_hash_call))
                replay_guard = true;
            return true;
        });
        if (replay_guard)
            return;
        sol::walk(body, [&](const Node& n) {
            if (n.is_call() && is_ident(n.callee(), "ecrecover"))
                out.push_back(fa.finding(121, n.span, fa.construct(s),
                    "recovered signature is never marked as used; the same signature can be replayed"));
            return true;
        });
    });
}

void check_124(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        sol::walk(body, [&](const Node& n) {
            if (n.kind != NodeKind::assignment)
                return true;
            const auto* lhs = n.child(0);
            if (!lhs || lhs->kind != NodeKind::index_access || !lhs->child(1))
                return true;
            const auto* base = root(*lhs);
            const auto* var = base ? fa.state_var(*base, s) : nullptr;
            if (!var || var->decl->type.category != sol::TypeCategory::array)
                return true;
            std::set<std::string> params;
            sol::walk(*lhs->child(1), [&](const Node& x) {
                if (fa.is_parameter(x, s))
                    params.insert(x.text);
                return true;
            });
            if (params.empty())
                return true;
            const auto guards = guards_before(body, n.span.offset);
            const bool checked = std::any_of(guards.begin(), guards.end(), [&](const Node* g) {
                return contains(*g, [&](const Node& x) {
                    return x.kind == NodeKind::identifier && params.count(x.text) > 0;
                });
            });
            if (!checked)
                out.push_back(fa.finding(124, n.span, fa.construct(s),
                    "write to storage array '" + var->decl->name + "' at caller-controlled index '" +
                        std::string(fa.text(*lhs->child(1))) + "' without bounds validation"));
            return true;
        });
    });
}

void check_125(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for (const auto& cs : fa.symbols.contracts)
    {
        if (cs.contract->kind != sol::ContractKind::contract || cs.linearization.size() < 3)
            continue;
        std::map<std::string, std::vector<const ContractDef*>> impls;
        for (std::size_t i = 1; i < cs.linearization.size(); ++i)
            for (const auto& f : cs.linearization[i]->functions)
                if (f.kind == FunctionKind::function && f.body)
                    impls[sol::canonical_signature(f)].push_back(cs.linearization[i]);
        for (const auto& [sig, owners] : impls)
        {
            const std::set<const ContractDef*> distinct(owners.begin(), owners.end());
            if (distinct.size() < 2)
                continue;
            const auto it = cs.functions.find(sig);
            const std::string resolved = it != cs.functions.end() && it->second.owner ? it->second.owner->name : "?";
            std::string names;
            for (const auto* o : owners)
                names += (names.empty() ? "" : ", ") + o->name;
            std::string msg = "'" + sig + "' is implemented by several bases (" + names + "); " + cs.contract->name +
                              " resolves it to " + resolved + " by linearization order";
            out.push_back(fa.finding(125, cs.contract->name_span, cs.contract->name, std::move(msg)));
        }
    }
}

void check_126(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        sol::walk(body, [&](const Node& n) {
            if (n.kind != NodeKind::expression_stmt || !n.child(0))
                return true;
            const auto mc = member_call(*n.child(0));
            if (!mc || !mc->invoked || !is_low_level(*mc) || !is_abi_encode_with(mc->node->arg(0)))
                return true;
            out.push_back(fa.finding(126, mc->node->span, fa.construct(s),
                "low-level '" + mc->member +
                    "' relays caller-chosen data and ignores the outcome; the relayed call can be made to fail"));
            return true;
        });
    });
}

void check_127(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for (const auto& s : fa.scopes())
    {
        if (!s.fn->body)
            continue;
        bool function_typed = std::any_of(s.locals.begin(), s.locals.end(),
            [&](const auto& kv) { return is_function_type(fa, &s, kv.second->type); });
        if (!function_typed && s.sym)
            for (const auto& v : s.sym->state_vars)
                if (is_function_type(fa, &s, v.decl->type))
                    function_typed = true;
        if (!function_typed)
            continue;
        sol::walk(*s.fn->body, [&](const Node& n) {
            if (n.kind != NodeKind::assembly)
                return true;
            const bool mstore = std::any_of(n.raw_tokens.begin(), n.raw_tokens.end(),
                [](const sol::Token& t) { return t.text == "mstore"; });
            if (mstore)
                out.push_back(fa.finding(127, n.span, fa.construct(s),
                    "inline assembly writes memory next to a function-type variable; the jump target can be "
                    "overwritten"));
            return false;
        });
    }
}

void check_128(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        sol::walk(body, [&](const Node& n) {
            const Node* cond = nullptr;
            const Node* loop_body = nullptr;
            if (n.kind == NodeKind::for_stmt)
            {
                cond = n.child(1);
                loop_body = n.child(3);
            }
            else if (n.kind == NodeKind::while_stmt)
            {
                cond = n.child(0);
                loop_body = n.child(1);
            }
            else if (n.kind == NodeKind::do_while_stmt)
            {
                cond = n.child(1);
                loop_body = n.child(0);
            }
            if (!cond || !loop_body)
                return true;
            const Node* array = nullptr;
            sol::walk(*cond, [&](const Node& x) {
                if (!array && x.kind == NodeKind::member_access && x.text == "length" && x.child(0))
                    if (const auto* r = root(*x.child(0)))
                        if (const auto* v = fa.state_var(*r, s); v && v->decl->type.is_dynamic_array())
                            array = x.child(0);
                return !array;
            });
            if (array && writes_storage(fa, s, *loop_body))
                out.push_back(fa.finding(128, n.span, fa.construct(s),
                    "loop bound '" + std::string(fa.text(*array)) +
                        ".length' grows with storage; the loop can exceed the block gas limit"));
            return true;
        });
    });
}

void check_129(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    const auto& toks = fa.unit.tokens;
    for (std::size_t i = 0; i + 2 < toks.size(); ++i)
    {
        const auto& eq = toks[i];
        const auto& sign = toks[i + 1];
        if (eq.text != "=" || (sign.text != "+" && sign.text != "-"))
            continue;
        if (sign.span.offset != eq.span.end())
            continue;
        const auto& next = toks[i + 2];
        const bool operand = next.kind == sol::TokenKind::identifier || next.kind == sol::TokenKind::integer_literal ||
                             next.kind == sol::TokenKind::address_literal || next.is(sol::TokenKind::punctuator, "(");
        if (!operand || (eq.leading_trivia.empty() && next.leading_trivia.empty()))
            continue;
        Span span = eq.span;
        span.length = sign.span.end() - eq.span.offset;
        span.end_line = sign.span.end_line;
        span.end_column = sign.span.end_column;
        const auto* scope = fa.enclosing(eq.span.offset);
        const std::string construct = scope ? fa.construct(*scope) : std::string{};
        const std::string op = std::string(eq.text) + std::string(sign.text);
        out.push_back(fa.finding(129, span, construct,
            "'" + op + "' is probably a typo for '" + std::string(sign.text) + "='"));
    }
}

void check_132(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        sol::walk(body, [&](const Node& n) {
            if (is_equality(n) && (is_this_balance(n.child(0)) || is_this_balance(n.child(1))))
                out.push_back(fa.finding(132, n.span, fa.construct(s),
                    "strict equality on the contract balance; ether can be forced in without a call"));
            return true;
        });
    });
    for (const auto& cs : fa.symbols.contracts)
    {
        for (const auto& v : cs.contract->state_vars)
        {
            if (v.type.category != sol::TypeCategory::elementary || v.is_constant)
                continue;
            int deposits = 0;
            bool other_write = false;
            for (const auto& s : fa.scopes())
            {
                if (s.contract != cs.contract || !s.fn->body)
                    continue;
                sol::walk(*s.fn->body, [&](const Node& n) {
                    const auto* w = fa.storage_write(n, s);
                    if (!w || w->decl != &v)
                        return true;
                    if (n.kind == NodeKind::assignment && n.text == "+=" && is_member(n.child(1), "value", "msg"))
                        ++deposits;
                    else
                        other_write = true;
                    return true;
                });
            }
            if (deposits > 0 && !other_write)
            {
                auto f = fa.finding(132, v.name_span, FileAnalysis::construct(*cs.contract, v.name),
                    "'" + v.name + "' tracks deposits through msg.value only and can diverge from the real balance");
                f.severity = Severity::info;
                out.push_back(std::move(f));
            }
        }
    }
}

void check_133(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        sol::walk(body, [&](const Node& n) {
            if (!n.is_call() || !is_member(n.callee(), "encodePacked", "abi"))
                return true;
            int dynamic = 0;
            for (std::size_t i = 0; i < n.arg_count(); ++i)
            {
                const auto* a = n.arg(i);
                if (!a || a->kind == NodeKind::literal)
                    continue;
                if (const auto t = fa.type_of(*a, s); t && t->is_dynamic())
                    ++dynamic;
            }
            if (dynamic >= 2)
                out.push_back(fa.finding(133, n.span, fa.construct(s),
                    "abi.encodePacked with several dynamic arguments is ambiguous; distinct inputs can hash "
                    "alike"));
            return true;
        });
    });
}

void check_134(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        sol::walk(body, [&](const Node& n) {
            if (!n.is_call() && n.kind != NodeKind::call_options)
                return true;
            const auto* gas = n.option("gas");
            if (gas && gas->value && is_integer_literal(*gas->value))
                out.push_back(fa.finding(134, n.span, fa.construct(s),
                    "call forwards a hardcoded gas amount " + std::string(fa.text(*gas->value)) +
                        "; gas costs change between forks"));
            return true;
        });
    });
}

void check_135(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for_each_body(fa, [&](const FnScope& s, const Node& body) {
        sol::walk(body, [&](const Node& n) {
            if (n.kind != NodeKind::expression_stmt || !n.child(0))
                return true;
            const auto& e = *n.child(0);
            std::string what;
            if (e.kind == NodeKind::member_access)
                what = "member access";
            else if (e.kind == NodeKind::call_options)
                what = "call options without the final invocation";
            else if (is_comparison(e))
                what = "comparison";
            if (!what.empty())
                out.push_back(fa.finding(135, e.span, fa.construct(s),
                    "statement '" + std::string(fa.text(e)) + "' has no effect (" + what + ")"));
            return true;
        });
    });
}

void check_136(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for (const auto* c : fa.unit.scopes())
        for (const auto& v : c->state_vars)
        {
            if (v.visibility == Visibility::public_ || v.is_constant)
                continue;
            const auto hit = std::find_if(fa.options.secret_names.begin(), fa.options.secret_names.end(),
                [&](const std::string& n) { return icontains(v.name, n); });
            if (hit == fa.options.secret_names.end())
                continue;
            out.push_back(fa.finding(136, v.name_span, FileAnalysis::construct(*c, v.name),
                "'" + v.name + "' looks like a secret; " +
                    (v.visibility == Visibility::unspecified ? std::string("non-public")
                                                             : std::string(sol::to_string(v.visibility))) +
                    " state is still readable from the chain"));
        }
}

void check_137(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for (const auto& s : fa.scopes())
    {
        if (!s.fn->body || !s.externally_callable() || !s.fn->modifiers_invoked.empty())
            continue;
        const auto m = s.fn->mutability;
        if (m == sol::Mutability::view || m == sol::Mutability::pure || m == sol::Mutability::constant_modifier)
            continue;
        if (mentions_msg_sender(*s.fn->body))
            continue;
        std::string what;
        sol::walk(*s.fn->body, [&](const Node& n) {
            if (!what.empty())
                return false;
            if (n.is_call() && (is_ident(n.callee(), "selfdestruct") || is_ident(n.callee(), "suicide")))
                what = "destroys the contract";
            else if (const auto mc = member_call(n); mc && is_ether_send(*mc))
            {
                if (const auto* amt = send_amount(*mc); amt && is_this_balance(amt))
                    what = "sends the whole balance";
            }
            else if (const auto* w = fa.storage_write(n, s);
                     w && (icontains(w->decl->name, "owner") || icontains(w->decl->name, "admin")))
                what = "overwrites '" + w->decl->name + "'";
            return what.empty();
        });
        if (!what.empty())
            out.push_back(fa.finding(137, s.fn->name_span, fa.construct(s),
                "function " + quoted(s.fn->name) + " " + what + " without any caller check"));
    }
}

void check_138(const FileAnalysis& fa, std::vector<RawFinding>& out)
{
    for (const auto& cs : fa.symbols.contracts)
    {
        if (cs.contract->kind != sol::ContractKind::contract)
            continue;
        bool receives = false;
        bool withdraws = false;
        for (const auto* c : cs.linearization)
        {
            for (const auto& f : c->functions)
            {
                if (f.kind == FunctionKind::receive ||
                    (f.mutability == sol::Mutability::payable && f.kind != FunctionKind::constructor &&
                        !(f.kind == FunctionKind::function && f.name == c->name)))
                    receives = true;
                if (f.body && contains(*f.body, is_ether_moving_call))
                    withdraws = true;
            }
            for (const auto& m : c->modifiers)
                if (m.body && contains(*m.body, is_ether_moving_call))
                    withdraws = true;
        }
        if (receives && !withdraws)
            out.push_back(fa.finding(138, cs.contract->name_span, cs.contract->name,
                "contract " + quoted(cs.contract->name) + " accepts ether but has no way to send it out"));
    }
}
}  // namespace swelint::rules
