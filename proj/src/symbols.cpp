// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

#include "swelint/symbols.hpp"

#include <algorithm>
#include <set>

namespace swelint::sol
{
namespace
{
using Seq = std::vector<const ContractDef*>;

bool in_tail(const Seq& seq, const ContractDef* c)
{
    return std::find(seq.begin() + 1, seq.end(), c) != seq.end();
}

/// Standard C3 merge. Returns false when no consistent order exists.
bool c3_merge(std::vector<Seq> seqs, Seq& out)
{
    while (true)
    {
        std::erase_if(seqs, [](const Seq& s) { return s.empty(); });
        if (seqs.empty())
            return true;
        const ContractDef* head = nullptr;
        for (const auto& s : seqs)
        {
            const auto* candidate = s.front();
            const bool blocked = std::any_of(seqs.begin(), seqs.end(), [&](const Seq& o) { return in_tail(o, candidate); });
            if (!blocked)
            {
                head = candidate;
                break;
            }
        }
        if (head == nullptr)
            return false;
        out.push_back(head);
        for (auto& s : seqs)
            if (!s.empty() && s.front() == head)
                s.erase(s.begin());
    }
}

Seq linearize_impl(const ContractDef& c, const ContractIndex& index, const SourceUnit* from,
    std::vector<Diagnostic>* diags, std::set<const ContractDef*>& active)
{
    if (active.contains(&c))
    {
        if (diags)
            diags->push_back({c.name_span, "cyclic inheritance involving '" + c.name + "'"});
        return {&c};
    }
    active.insert(&c);

    std::vector<const ContractDef*> bases;
    for (const auto& b : c.bases)
    {
        const auto* base = index.find(b.name, from);
        if (base == nullptr)
        {
            if (diags)
                diags->push_back({b.span, "unresolved base contract '" + b.name + "'"});
            continue;
        }
        if (base == &c)
            continue;
        bases.push_back(base);
    }

    std::vector<Seq> seqs;
    for (auto it = bases.rbegin(); it != bases.rend(); ++it)
    {
        const auto* base_unit = index.unit_of(*it);
        seqs.push_back(linearize_impl(**it, index, base_unit ? base_unit : from, diags, active));
    }
    seqs.emplace_back(bases.rbegin(), bases.rend());

    Seq result{&c};
    Seq merged;
    if (!c3_merge(seqs, merged))
    {
        if (diags)
            diags->push_back({c.name_span, "inheritance graph of '" + c.name + "' cannot be linearized"});
        merged.clear();
        std::set<const ContractDef*> seen{&c};
        for (auto& s : seqs)
            for (const auto* x : s)
                if (seen.insert(x).second)
                    merged.push_back(x);
    }
    result.insert(result.end(), merged.begin(), merged.end());
    active.erase(&c);
    return result;
}

bool is_callable_from_outside(const FunctionDef& fn)
{
    return fn.kind == FunctionKind::function &&
           (fn.visibility == Visibility::public_ || fn.visibility == Visibility::external ||
               fn.visibility == Visibility::unspecified);
}

void collect_locals(const Node& node, std::vector<const VarDecl*>& out)
{
    walk(node, [&](const Node& n) {
        for (const auto& d : n.decls)
            if (!d.name.empty())
                out.push_back(&d);
        return true;
    });
}
}  // namespace

const StateVarRef* ContractSymbols::find_state_var(std::string_view name) const noexcept
{
    // Later entries are more derived and win.
    for (auto it = state_vars.rbegin(); it != state_vars.rend(); ++it)
        if (it->decl->name == name)
            return &*it;
    return nullptr;
}

std::vector<FunctionRef> ContractSymbols::inherited_declarations(std::string_view signature) const
{
    std::vector<FunctionRef> out;
    for (std::size_t i = 1; i < linearization.size(); ++i)
        for (const auto& fn : linearization[i]->functions)
            if (fn.kind == FunctionKind::function && fn.signature == signature)
            {
                out.push_back({linearization[i], &fn});
                break;
            }
    return out;
}

ContractIndex::ContractIndex(const std::vector<const SourceUnit*>& units)
{
    for (const auto* u : units)
        for (const auto& c : u->contracts)
        {
            by_name_.emplace(c.name, std::make_pair(u, &c));
            owner_.emplace(&c, u);
        }
}

const ContractDef* ContractIndex::find(std::string_view name, const SourceUnit* from) const
{
    // "Lib.Type" style references resolve on their last component.
    if (const auto dot = name.rfind('.'); dot != std::string_view::npos)
        name = name.substr(dot + 1);
    auto [lo, hi] = by_name_.equal_range(name);
    const ContractDef* fallback = nullptr;
    for (auto it = lo; it != hi; ++it)
    {
        if (it->second.first == from)
            return it->second.second;
        if (fallback == nullptr)
            fallback = it->second.second;
    }
    return fallback;
}

const SourceUnit* ContractIndex::unit_of(const ContractDef* c) const
{
    const auto it = owner_.find(c);
    return it == owner_.end() ? nullptr : it->second;
}

const ContractSymbols* SymbolTable::find(const ContractDef* c) const noexcept
{
    for (const auto& s : contracts)
        if (s.contract == c)
            return &s;
    return nullptr;
}

const ContractSymbols* SymbolTable::find(std::string_view name) const noexcept
{
    for (const auto& s : contracts)
        if (s.contract->name == name)
            return &s;
    return nullptr;
}

std::vector<const ContractDef*> linearize(const ContractDef& contract, const ContractIndex& index,
    const SourceUnit* from, std::vector<Diagnostic>* diagnostics)
{
    std::set<const ContractDef*> active;
    return linearize_impl(contract, index, from, diagnostics, active);
}

std::string getter_signature(const VarDecl& var)
{
    std::string params;
    const TypeName* t = &var.type;
    while (t->category == TypeCategory::mapping || t->category == TypeCategory::array)
    {
        if (!params.empty())
            params += ",";
        if (t->category == TypeCategory::mapping)
        {
            params += t->args[0].name;
            t = &t->args[1];
        }
        else
        {
            params += "uint256";
            t = &t->args[0];
        }
    }
    return var.name + "(" + params + ")";
}

SymbolTable resolve(const SourceUnit& unit, const std::vector<const SourceUnit*>& siblings)
{
    std::vector<const SourceUnit*> all{&unit};
    for (const auto* s : siblings)
        if (s != &unit)
            all.push_back(s);
    const ContractIndex index(all);

    SymbolTable table;
    for (const auto& c : unit.contracts)
    {
        ContractSymbols sym;
        sym.contract = &c;
        sym.unit = &unit;
        sym.linearization = linearize(c, index, &unit, &table.diagnostics);

        for (auto it = sym.linearization.rbegin(); it != sym.linearization.rend(); ++it)
        {
            for (const auto& v : (*it)->state_vars)
                sym.state_vars.push_back({*it, &v});
            for (const auto& fn : (*it)->functions)
                if (fn.kind == FunctionKind::function)
                    sym.functions[fn.signature] = {*it, &fn};
        }

        std::map<std::string, InterfaceEntry> iface;
        for (auto it = sym.linearization.rbegin(); it != sym.linearization.rend(); ++it)
        {
            for (const auto& v : (*it)->state_vars)
                if (v.visibility == Visibility::public_ && !v.type.name.empty())
                {
                    InterfaceEntry e;
                    e.signature = getter_signature(v);
                    e.owner = *it;
                    e.getter = &v;
                    iface[e.signature] = e;
                }
            for (const auto& fn : (*it)->functions)
                if (is_callable_from_outside(fn))
                {
                    InterfaceEntry e;
                    e.signature = fn.signature;
                    e.owner = *it;
                    e.fn = &fn;
                    iface[e.signature] = e;
                }
        }
        for (auto& [sig, e] : iface)
            sym.interface.push_back(e);
        std::sort(sym.interface.begin(), sym.interface.end(),
            [](const InterfaceEntry& a, const InterfaceEntry& b) { return a.span().offset < b.span().offset; });

        // Inherited state variables redeclared here.
        for (const auto& v : c.state_vars)
            for (std::size_t i = 1; i < sym.linearization.size(); ++i)
            {
                const auto* base = sym.linearization[i];
                if (const auto* hidden = base->find_state_var(v.name))
                {
                    table.shadowing.push_back({&c, &v, nullptr, base, hidden});
                    break;
                }
            }

        // Locals and parameters hiding a visible state variable.
        auto scan_function = [&](const FunctionDef& fn) {
            std::vector<const VarDecl*> locals;
            for (const auto& p : fn.params)
                if (!p.name.empty())
                    locals.push_back(&p);
            for (const auto& r : fn.returns)
                if (!r.name.empty())
                    locals.push_back(&r);
            if (fn.body)
                collect_locals(*fn.body, locals);
            for (const auto* local : locals)
                if (const auto* hidden = sym.find_state_var(local->name))
                    table.shadowing.push_back({&c, local, &fn, hidden->owner, hidden->decl});
        };
        for (const auto& fn : c.functions)
            scan_function(fn);
        for (const auto& m : c.modifiers)
            scan_function(m);

        table.contracts.push_back(std::move(sym));
    }
    return table;
}
}  // namespace swelint::sol
