// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "swelint/ast.hpp"

#include <map>
#include <string>
#include <vector>

namespace swelint::sol
{
/// A state variable together with the contract that declares it.
struct StateVarRef
{
    const ContractDef* owner = nullptr;
    const VarDecl* decl = nullptr;
};

struct FunctionRef
{
    const ContractDef* owner = nullptr;
    const FunctionDef* fn = nullptr;
};

/// One externally callable entry of a contract's flattened interface:
/// a public/external function or the getter of a public state variable.
struct InterfaceEntry
{
    std::string signature;
    const ContractDef* owner = nullptr;
    const FunctionDef* fn = nullptr;   // null for getters
    const VarDecl* getter = nullptr;   // null for functions
    [[nodiscard]] Span span() const noexcept { return fn ? fn->name_span : getter->name_span; }
};

/// `derived` hides `shadowed`. For local shadowing `function` is the
/// enclosing function and `derived_owner` the contract declaring it.
struct ShadowPair
{
    const ContractDef* derived_owner = nullptr;
    const VarDecl* derived = nullptr;
    const FunctionDef* function = nullptr;
    const ContractDef* shadowed_owner = nullptr;
    const VarDecl* shadowed = nullptr;
};

struct ContractSymbols
{
    const ContractDef* contract = nullptr;
    const SourceUnit* unit = nullptr;
    /// C3 order, most derived first; always starts with the contract itself.
    std::vector<const ContractDef*> linearization;
    /// Inherited and own state variables, most base first.
    std::vector<StateVarRef> state_vars;
    /// Most-derived implementation per signature.
    std::map<std::string, FunctionRef> functions;
    std::vector<InterfaceEntry> interface;

    [[nodiscard]] const StateVarRef* find_state_var(std::string_view name) const noexcept;
    /// Functions declared under `signature` by distinct contracts in the
    /// linearization (excluding the contract itself).
    [[nodiscard]] std::vector<FunctionRef> inherited_declarations(std::string_view signature) const;
};

/// Contract lookup across the file under analysis and its siblings.
class ContractIndex
{
public:
    explicit ContractIndex(const std::vector<const SourceUnit*>& units);
    /// Prefers a contract from `from` when several units define the name.
    [[nodiscard]] const ContractDef* find(std::string_view name, const SourceUnit* from = nullptr) const;
    [[nodiscard]] const SourceUnit* unit_of(const ContractDef* c) const;

private:
    std::multimap<std::string, std::pair<const SourceUnit*, const ContractDef*>, std::less<>> by_name_;
    std::map<const ContractDef*, const SourceUnit*> owner_;
};

struct SymbolTable
{
    std::vector<ContractSymbols> contracts;  // source order
    std::vector<ShadowPair> shadowing;
    std::vector<Diagnostic> diagnostics;

    [[nodiscard]] const ContractSymbols* find(const ContractDef* c) const noexcept;
    [[nodiscard]] const ContractSymbols* find(std::string_view name) const noexcept;
};

/// Resolves every contract of `unit`. Bases are looked up in `unit` first and
/// then in `siblings`; unknown bases produce a diagnostic and are skipped.
SymbolTable resolve(const SourceUnit& unit, const std::vector<const SourceUnit*>& siblings);

/// C3 linearization using Solidity's convention: the rightmost listed base
/// is the most derived one. Unresolvable merges fall back to a depth-first
/// order and add a diagnostic.
std::vector<const ContractDef*> linearize(const ContractDef& contract, const ContractIndex& index,
    const SourceUnit* from, std::vector<Diagnostic>* diagnostics = nullptr);

/// "name(k1,k2)" getter signature of a public state variable.
std::string getter_signature(const VarDecl& var);
}  // namespace swelint::sol
