// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "swelint/lexer.hpp"
#include "swelint/pragma.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace swelint::sol
{
enum class TypeCategory
{
    elementary,
    user,  // contract, interface, struct or enum name
    array,
    mapping,
    function
};

/// Declared type. `name` is canonical text ("uint256", "address[]",
/// "mapping(address=>uint256)").
struct TypeName
{
    TypeCategory category = TypeCategory::elementary;
    std::string name;
    std::vector<TypeName> args;  // array: {element}; mapping: {key, value}
    bool fixed_size = false;     // arrays only

    [[nodiscard]] bool is_integer() const noexcept;
    [[nodiscard]] bool is_address() const noexcept;
    /// string, bytes, or a dynamically sized array.
    [[nodiscard]] bool is_dynamic() const noexcept;
    [[nodiscard]] bool is_dynamic_array() const noexcept
    {
        return category == TypeCategory::array && !fixed_size;
    }
};

/// Maps elementary type aliases to their canonical names (uint -> uint256).
std::string canonical_elementary(std::string_view name);

enum class Visibility
{
    unspecified,
    public_,
    private_,
    internal,
    external
};

enum class Mutability
{
    nonpayable,
    payable,
    view,
    pure,
    constant_modifier
};

enum class DataLocation
{
    unspecified,
    memory,
    storage,
    calldata
};

std::string_view to_string(Visibility v) noexcept;

enum class NodeKind
{
    block,
    if_stmt,
    for_stmt,
    while_stmt,
    do_while_stmt,
    expression_stmt,
    var_decl_stmt,
    return_stmt,
    emit_stmt,
    revert_stmt,
    throw_stmt,
    break_stmt,
    continue_stmt,
    placeholder_stmt,  // `_;` inside modifiers
    assembly,
    unchecked_block,
    opaque,  // unsupported construct kept as raw tokens

    assignment,
    binary_op,
    unary_op,
    conditional,
    call,
    require_call,
    assert_call,
    call_options,  // `f{value: v}` or `f.value(v)` without the final invocation
    member_access,
    index_access,
    identifier,
    literal,
    tuple,
    new_expr,
    elementary_type  // type used as an expression, e.g. `uint[]` in `new uint[](n)`
};

enum class LiteralKind
{
    number,
    address,
    string,
    boolean
};

struct Node;
using NodePtr = std::unique_ptr<Node>;

struct VarDecl
{
    TypeName type;
    std::string name;
    Span span;
    Span name_span;
    Visibility visibility = Visibility::unspecified;
    DataLocation location = DataLocation::unspecified;
    bool is_constant = false;
    bool is_immutable = false;
    NodePtr initializer;
};

struct CallOption
{
    std::string name;  // "value", "gas", "salt"
    NodePtr value;
    bool chained = false;  // `.value(x)` form rather than `{value: x}`
};

/// One AST node. Statement and expression kinds share the representation;
/// which fields matter depends on `kind`:
///   if_stmt         children = {cond, then, else?}
///   for_stmt        children = {init?, cond?, post?, body}   (absent = nullptr)
///   while_stmt      children = {cond, body}; do_while_stmt {body, cond}
///   expression_stmt children = {expr}
///   var_decl_stmt   decls (empty names for tuple gaps), children = {init?}
///   return/emit/revert children = {expr?} / {call} / {args...}
///   assignment      text = operator, children = {lhs, rhs}
///   binary_op       text = operator, children = {lhs, rhs}
///   unary_op        text = operator, prefix, children = {operand}
///   conditional     children = {cond, then, else}
///   call (+require_call, assert_call) children = {callee, args...}, options
///   call_options    children = {callee}, options
///   member_access   text = member, children = {object}
///   index_access    children = {base, index?}
///   identifier      text = name
///   literal         text = source text, literal_kind, unit ("ether")
///   new_expr        type
///   assembly        raw_tokens (between the braces)
struct Node
{
    NodeKind kind = NodeKind::opaque;
    Span span;
    std::string text;
    std::vector<NodePtr> children;

    std::vector<CallOption> options;
    bool prefix = true;
    LiteralKind literal_kind = LiteralKind::number;
    std::string unit;
    TypeName type;
    std::vector<VarDecl> decls;
    std::vector<Token> raw_tokens;

    [[nodiscard]] bool is_call() const noexcept
    {
        return kind == NodeKind::call || kind == NodeKind::require_call || kind == NodeKind::assert_call;
    }
    [[nodiscard]] const Node* child(std::size_t i) const noexcept
    {
        return i < children.size() ? children[i].get() : nullptr;
    }
    [[nodiscard]] const Node* callee() const noexcept { return child(0); }
    [[nodiscard]] std::size_t arg_count() const noexcept { return children.empty() ? 0 : children.size() - 1; }
    [[nodiscard]] const Node* arg(std::size_t i) const noexcept { return child(i + 1); }
    [[nodiscard]] const CallOption* option(std::string_view name) const noexcept;
};

/// Pre-order walk over a subtree including call option values; the callback
/// returns false to skip a node's children.
void walk(const Node& node, const std::function<bool(const Node&)>& visit);

enum class FunctionKind
{
    function,
    constructor,
    fallback,
    receive,
    modifier
};

struct ModifierInvocation
{
    std::string name;
    std::vector<NodePtr> args;
    Span span;
};

struct FunctionDef
{
    FunctionKind kind = FunctionKind::function;
    std::string name;  // empty for constructor/fallback/receive
    bool is_constructor_keyword = false;
    Visibility visibility = Visibility::unspecified;
    Mutability mutability = Mutability::nonpayable;
    bool is_virtual = false;
    std::vector<VarDecl> params;
    std::vector<VarDecl> returns;
    std::vector<ModifierInvocation> modifiers_invoked;
    NodePtr body;  // block; null when declared without a body
    std::string signature;
    Span span;
    Span name_span;
};

struct StructDef
{
    std::string name;
    std::vector<VarDecl> fields;
    Span span;
};

struct EventDef
{
    std::string name;
    std::vector<VarDecl> params;
    Span span;
};

struct BaseSpec
{
    std::string name;
    Span span;
};

enum class ContractKind
{
    contract,
    interface,
    library,
    file_level  // holds free functions/modifiers/structs declared outside any contract
};

struct ContractDef
{
    std::string name;
    ContractKind kind = ContractKind::contract;
    bool is_abstract = false;
    std::vector<BaseSpec> bases;  // declaration order
    std::vector<VarDecl> state_vars;
    std::vector<FunctionDef> functions;
    std::vector<FunctionDef> modifiers;
    std::vector<EventDef> events;
    std::vector<StructDef> structs;
    std::vector<std::string> enums;
    Span span;
    Span name_span;

    [[nodiscard]] const FunctionDef* find_function(std::string_view name) const noexcept;
    [[nodiscard]] const VarDecl* find_state_var(std::string_view name) const noexcept;
};

struct Diagnostic
{
    Span span;
    std::string message;
};

struct ImportDirective
{
    std::string path;
    Span span;
};

struct SourceUnit
{
    std::string path;
    std::string source;
    std::vector<Token> tokens;
    std::vector<PragmaConstraint> pragmas;
    std::vector<ImportDirective> imports;
    std::vector<ContractDef> contracts;
    ContractDef file_scope;  // kind == file_level
    std::vector<Diagnostic> parse_diagnostics;

    /// Source line `line` (1-based) without the newline.
    [[nodiscard]] std::string_view line_text(std::uint32_t line) const noexcept;
    /// Contracts followed by the file scope.
    [[nodiscard]] std::vector<const ContractDef*> scopes() const;
};

/// "name(t1,t2,...)" using canonical parameter types.
std::string canonical_signature(const FunctionDef& fn);
}  // namespace swelint::sol
