// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "swelint/solidity_rules.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace swelint::rules
{
using sol::ContractDef;
using sol::FunctionDef;
using sol::Node;
using sol::NodeKind;
using sol::Span;
using sol::TypeName;
using sol::VarDecl;

/// A function or modifier body together with the names visible in it.
struct FnScope
{
    const ContractDef* contract = nullptr;  // may be the file scope
    const FunctionDef* fn = nullptr;
    const sol::ContractSymbols* sym = nullptr;  // null for the file scope
    std::map<std::string, const VarDecl*, std::less<>> locals;  // params, returns and body declarations
    std::set<std::string, std::less<>> params;

    [[nodiscard]] bool is_constructor() const noexcept;
    [[nodiscard]] bool externally_callable() const noexcept;
};

/// Per-file facts shared by all rules.
class FileAnalysis
{
public:
    FileAnalysis(const SolidityProgram& program, std::size_t unit_index);

    const SolidityProgram& program;
    const sol::SourceUnit& unit;
    const sol::SymbolTable& symbols;
    const SolidityOptions& options;

    [[nodiscard]] const std::vector<FnScope>& scopes() const noexcept { return scopes_; }
    [[nodiscard]] const FnScope* enclosing(std::size_t offset) const noexcept;
    [[nodiscard]] const sol::ContractDef* enclosing_contract(std::size_t offset) const noexcept;

    [[nodiscard]] std::string construct(const FnScope& s) const;
    [[nodiscard]] static std::string construct(const ContractDef& c, std::string_view member = {});

    [[nodiscard]] RawFinding finding(int id, const Span& span, std::string construct, std::string message) const;

    /// Source text of a node.
    [[nodiscard]] std::string_view text(const Node& n) const;

    // --- name resolution --------------------------------------------------
    [[nodiscard]] const VarDecl* local(const Node& ident, const FnScope& s) const;
    /// State variable named by `ident` unless a local hides it.
    [[nodiscard]] const sol::StateVarRef* state_var(const Node& ident, const FnScope& s) const;
    [[nodiscard]] bool is_parameter(const Node& ident, const FnScope& s) const;
    /// Identifier that names nothing declared in the program (e.g. elided
    /// declarations in listings).
    [[nodiscard]] bool is_undeclared(const Node& ident, const FnScope& s) const;
    [[nodiscard]] const ContractDef* contract_named(std::string_view name) const;
    [[nodiscard]] const sol::StructDef* struct_named(std::string_view name, const FnScope& s) const;
    [[nodiscard]] std::optional<TypeName> type_of(const Node& n, const FnScope& s) const;

    /// Storage location written by `n` (assignment, ++/--, delete, push/pop),
    /// or null when `n` is not a storage write.
    [[nodiscard]] const sol::StateVarRef* storage_write(const Node& n, const FnScope& s) const;

private:
    std::vector<FnScope> scopes_;
    std::vector<sol::StateVarRef> file_vars_;  // for the file scope (always empty)
};

// --- expression helpers -------------------------------------------------------

bool is_ident(const Node* n, std::string_view name) noexcept;
/// `object.member`; an empty `object` matches any object.
bool is_member(const Node* n, std::string_view member, std::string_view object = {}) noexcept;
/// Base identifier of member/index chains and casts, e.g. `a` for `a.b[c].d`.
const Node* root(const Node& n) noexcept;
/// Removes `payable(x)` / `address(x)` wrappers.
const Node* strip_address_casts(const Node& n) noexcept;

bool is_comparison(const Node& n) noexcept;
bool is_equality(const Node& n) noexcept;
bool is_arithmetic(const Node& n) noexcept;
bool is_integer_literal(const Node& n) noexcept;
bool is_block_value(const Node& n) noexcept;  // block.timestamp, now, block.number
bool contains(const Node& n, const std::function<bool(const Node&)>& pred);
/// Like sol::walk but also reports how many loops enclose each node.
void walk_loops(const Node& n, const std::function<void(const Node&, int)>& visit, int depth = 0);

/// A call through a member (`x.f(...)`, `x.f{...}(...)`, `x.f.value(v)()`) or
/// an option-bearing reference that is never invoked.
struct MemberCall
{
    const Node* node = nullptr;    // call or call_options node
    const Node* target = nullptr;  // object of the member access
    std::string member;
    const Node* value = nullptr;  // value option
    const Node* gas = nullptr;    // gas option
    bool invoked = false;
};

std::optional<MemberCall> member_call(const Node& n);
bool is_low_level(const MemberCall& c) noexcept;  // call, send, delegatecall, staticcall, callcode
/// transfer/send with one argument, or a call carrying a value option.
bool is_ether_send(const MemberCall& c) noexcept;
/// Amount of an ether send.
const Node* send_amount(const MemberCall& c) noexcept;

/// Conditions of require/assert calls and of if/while statements that start
/// before `before` inside `body`.
std::vector<const Node*> guards_before(const Node& body, std::size_t before);
}  // namespace swelint::rules
