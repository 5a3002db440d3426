// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

// Rules that look across every file of a scan.

#include "checks.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace swelint::rules
{
namespace
{
using Int = __int128;

std::optional<Int> unit_multiplier(std::string_view unit)
{
    static const std::map<std::string, Int, std::less<>> units{{"", 1}, {"wei", 1}, {"gwei", 1'000'000'000},
        {"szabo", 1'000'000'000'000}, {"finney", 1'000'000'000'000'000}, {"ether", 1'000'000'000'000'000'000},
        {"seconds", 1}, {"minutes", 60}, {"hours", 3600}, {"days", 86400}, {"weeks", 604800},
        {"years", 31'536'000}};
    const auto it = units.find(unit);
    if (it == units.end())
        return std::nullopt;
    return it->second;
}

/// Value of an integer literal with an optional unit, or nullopt when it is
/// not an exact integer that fits.
std::optional<Int> literal_value(const Node& n)
{
    if (n.kind == NodeKind::unary_op && n.text == "-" && n.child(0))
    {
        const auto v = literal_value(*n.child(0));
        return v ? std::optional<Int>(-*v) : std::nullopt;
    }
    if (n.kind == NodeKind::tuple && n.children.size() == 1 && n.child(0))
        return literal_value(*n.child(0));
    if (!is_integer_literal(n))
        return std::nullopt;
    std::string text;
    for (const char c : n.text)
        if (c != '_')
            text += c;
    if (const auto sp = text.find(' '); sp != std::string::npos)
        text.resize(sp);
    const auto mult = unit_multiplier(n.unit);
    if (!mult)
        return std::nullopt;
    constexpr Int limit = Int(1) << 120;
    Int value = 0;
    if (text.starts_with("0x") || text.starts_with("0X"))
    {
        if (text.size() > 32)
            return std::nullopt;
        for (std::size_t i = 2; i < text.size(); ++i)
        {
            const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
            const int d = std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : c - 'a' + 10;
            if (d < 0 || d > 15)
                return std::nullopt;
            value = value * 16 + d;
        }
        return value * *mult;
    }
    std::string mantissa = text;
    int exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string::npos)
    {
        mantissa = text.substr(0, e);
        try
        {
            exponent = std::stoi(text.substr(e + 1));
        }
        catch (const std::exception&)
        {
            return std::nullopt;
        }
    }
    if (const auto dot = mantissa.find('.'); dot != std::string::npos)
    {
        exponent -= static_cast<int>(mantissa.size() - dot - 1);
        mantissa.erase(dot, 1);
    }
    for (const char c : mantissa)
    {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return std::nullopt;
        value = value * 10 + (c - '0');
        if (value > limit)
            return std::nullopt;
    }
    value *= *mult;
    for (; exponent > 0; --exponent)
        if ((value *= 10) > limit)
            return std::nullopt;
    for (; exponent < 0; ++exponent)
    {
        if (value % 10 != 0)
            return std::nullopt;
        value /= 10;
    }
    return value;
}

std::optional<bool> compare(std::string_view op, Int a, Int b)
{
    if (op == "==")
        return a == b;
    if (op == "!=")
        return a != b;
    if (op == "<")
        return a < b;
    if (op == ">")
        return a > b;
    if (op == "<=")
        return a <= b;
    if (op == ">=")
        return a >= b;
    return std::nullopt;
}

/// Evaluates `cond` with parameter values bound; nullopt when unknown.
std::optional<bool> evaluate(const Node& cond, const std::map<std::string, Int>& bound)
{
    if (cond.kind == NodeKind::tuple && cond.children.size() == 1 && cond.child(0))
        return evaluate(*cond.child(0), bound);
    if (cond.kind == NodeKind::binary_op && cond.text == "&&" && cond.child(0) && cond.child(1))
    {
        const auto a = evaluate(*cond.child(0), bound);
        const auto b = evaluate(*cond.child(1), bound);
        if ((a && !*a) || (b && !*b))
            return false;
        if (a && b)
            return true;
        return std::nullopt;
    }
    if (!is_comparison(cond) || !cond.child(0) || !cond.child(1))
        return std::nullopt;
    auto value = [&](const Node& side) -> std::optional<Int> {
        if (side.kind == NodeKind::identifier)
        {
            const auto it = bound.find(side.text);
            return it == bound.end() ? std::nullopt : std::optional<Int>(it->second);
        }
        return literal_value(side);
    };
    const auto a = value(*cond.child(0));
    const auto b = value(*cond.child(1));
    if (!a || !b)
        return std::nullopt;
    return compare(cond.text, *a, *b);
}

struct Target
{
    const ContractDef* owner = nullptr;
    const FunctionDef* fn = nullptr;
};

std::vector<Target> candidates(const SolidityProgram& program, const ContractDef& contract, std::string_view name,
    std::size_t arity)
{
    std::vector<Target> out;
    const auto* sym = program.symbols_of(&contract);
    const std::vector<const ContractDef*> chain = sym ? sym->linearization : std::vector{&contract};
    for (const auto* c : chain)
        for (const auto& f : c->functions)
            if (f.kind == sol::FunctionKind::function && f.name == name && f.params.size() == arity && f.body)
                out.push_back({c, &f});
    return out;
}

/// First failing leading require of `fn` under the literal arguments of `call`.
const Node* failing_require(const FunctionDef& fn, const Node& call)
{
    std::map<std::string, Int> bound;
    for (std::size_t i = 0; i < fn.params.size(); ++i)
        if (call.arg(i) && !fn.params[i].name.empty())
            if (const auto v = literal_value(*call.arg(i)))
                bound.emplace(fn.params[i].name, *v);
    if (bound.empty())
        return nullptr;
    for (const auto& stmt : fn.body->children)
    {
        if (!stmt || stmt->kind != NodeKind::expression_stmt || !stmt->child(0) ||
            stmt->child(0)->kind != NodeKind::require_call)
            break;
        const auto* req = stmt->child(0);
        if (!req->arg(0))
            continue;
        if (const auto r = evaluate(*req->arg(0), bound); r && !*r)
            return req;
    }
    return nullptr;
}

std::string quoted(std::string_view s)
{
    return "'" + std::string(s) + "'";
}

RawFinding program_finding(const sol::SourceUnit& unit, int id, const Span& span, std::string construct,
    std::string message)
{
    RawFinding f;
    f.rule = SweId{id};
    f.path = unit.path;
    f.span = span;
    f.construct = std::move(construct);
    f.message = std::move(message);
    return f;
}

struct Selected
{
    std::uint32_t selector;
    std::string signature;
    friend auto operator<=>(const Selected&, const Selected&) = default;
};

std::vector<Selected> selectors_of(const sol::ContractSymbols& cs)
{
    std::set<Selected> out;
    for (const auto& e : cs.interface)
    {
        try
        {
            const auto s = selector(e.signature);
            out.insert({s.value(), e.signature});
        }
        catch (const std::invalid_argument&)
        {
        }
    }
    return {out.begin(), out.end()};
}

std::string hex8(std::uint32_t v)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string s(8, '0');
    for (int i = 7; i >= 0; --i, v >>= 4)
        s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    return s;
}

bool has_delegating_fallback(const ContractDef& c)
{
    return std::any_of(c.functions.begin(), c.functions.end(), [](const FunctionDef& f) {
        return f.kind == sol::FunctionKind::fallback && f.body && contains(*f.body, [](const Node& n) {
            const auto mc = member_call(n);
            return mc && mc->member == "delegatecall";
        });
    });
}
}  // namespace

void check_123(const SolidityProgram& program, std::vector<RawFinding>& out)
{
    for (std::size_t u = 0; u < program.units.size(); ++u)
    {
        const FileAnalysis fa(program, u);
        for (const auto& s : fa.scopes())
        {
            if (!s.fn->body)
                continue;
            sol::walk(*s.fn->body, [&](const Node& n) {
                if (n.kind != NodeKind::call || !n.callee())
                    return true;
                std::vector<Target> targets;
                const auto* callee = n.callee();
                if (callee->kind == NodeKind::member_access && callee->child(0))
                {
                    const auto t = fa.type_of(*callee->child(0), s);
                    if (t && t->category == sol::TypeCategory::user)
                        if (const auto* c = fa.contract_named(t->name))
                            targets = candidates(program, *c, callee->text, n.arg_count());
                }
                else if (callee->kind == NodeKind::identifier && s.contract &&
                         s.contract->kind != sol::ContractKind::file_level)
                    targets = candidates(program, *s.contract, callee->text, n.arg_count());
                if (targets.empty())
                    return true;
                const auto& target = targets.front();
                if (const auto* req = failing_require(*target.fn, n))
                {
                    const auto* target_unit = program.index->unit_of(target.owner);
                    const auto req_text = target_unit ? std::string_view(target_unit->source)
                                                            .substr(req->span.offset, req->span.length)
                                                      : std::string_view{};
                    out.push_back(fa.finding(123, n.span, fa.construct(s),
                        "call " + quoted(fa.text(n)) + " always fails " + quoted(req_text) + " in " +
                            FileAnalysis::construct(*target.owner, target.fn->name)));
                }
                return true;
            });
        }
    }
}

std::vector<RawFinding> find_selector_clashes(const SolidityProgram& program)
{
    std::vector<RawFinding> out;
    for (std::size_t u = 0; u < program.units.size(); ++u)
    {
        const auto& unit = *program.units[u];
        for (const auto& cs : program.symbols[u].contracts)
        {
            const auto& c = *cs.contract;
            if (c.kind == sol::ContractKind::library || c.kind == sol::ContractKind::file_level)
                continue;
            const auto own = selectors_of(cs);
            for (std::size_t i = 0; i < own.size(); ++i)
                for (std::size_t j = i + 1; j < own.size() && own[j].selector == own[i].selector; ++j)
                    out.push_back(program_finding(unit, 158, c.name_span, c.name,
                        "functions " + quoted(own[i].signature) + " and " + quoted(own[j].signature) +
                            " share selector 0x" + hex8(own[i].selector)));
            if (!has_delegating_fallback(c))
                continue;
            std::set<const ContractDef*> targets;
            for (const auto& v : cs.state_vars)
                if (v.decl->type.category == sol::TypeCategory::user)
                    if (const auto* t = program.index->find(v.decl->type.name, &unit);
                        t && t != &c && t->kind != sol::ContractKind::library)
                        targets.insert(t);
            std::vector<const ContractDef*> ordered(targets.begin(), targets.end());
            std::sort(ordered.begin(), ordered.end(),
                [](const ContractDef* a, const ContractDef* b) { return a->name < b->name; });
            for (const auto* t : ordered)
            {
                const auto* ts = program.symbols_of(t);
                if (!ts)
                    continue;
                for (const auto& mine : own)
                    for (const auto& theirs : selectors_of(*ts))
                        if (mine.selector == theirs.selector && mine.signature != theirs.signature)
                            out.push_back(program_finding(unit, 158, c.name_span, c.name,
                                "proxy function " + quoted(mine.signature) + " shadows " + t->name + "." +
                                    theirs.signature + " with selector 0x" + hex8(mine.selector)));
            }
        }
    }
    return out;
}

void check_158(const SolidityProgram& program, std::vector<RawFinding>& out)
{
    auto found = find_selector_clashes(program);
    out.insert(out.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
}
}  // namespace swelint::rules
