// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

#include "swelint/ast.hpp"

#include <algorithm>

namespace swelint::sol
{
bool TypeName::is_integer() const noexcept
{
    return category == TypeCategory::elementary && (name.starts_with("uint") || name.starts_with("int"));
}

bool TypeName::is_address() const noexcept
{
    return category == TypeCategory::elementary && name == "address";
}

bool TypeName::is_dynamic() const noexcept
{
    if (category == TypeCategory::elementary)
        return name == "string" || name == "bytes";
    return is_dynamic_array();
}

std::string canonical_elementary(std::string_view name)
{
    if (name == "uint")
        return "uint256";
    if (name == "int")
        return "int256";
    if (name == "byte")
        return "bytes1";
    if (name == "fixed")
        return "fixed128x18";
    if (name == "ufixed")
        return "ufixed128x18";
    return std::string(name);
}

std::string_view to_string(Visibility v) noexcept
{
    switch (v)
    {
    case Visibility::unspecified:
        return "unspecified";
    case Visibility::public_:
        return "public";
    case Visibility::private_:
        return "private";
    case Visibility::internal:
        return "internal";
    case Visibility::external:
        return "external";
    }
    return "unspecified";
}

const CallOption* Node::option(std::string_view name) const noexcept
{
    for (const auto& o : options)
        if (o.name == name)
            return &o;
    return nullptr;
}

void walk(const Node& node, const std::function<bool(const Node&)>& visit)
{
    if (!visit(node))
        return;
    for (const auto& child : node.children)
        if (child)
            walk(*child, visit);
    for (const auto& opt : node.options)
        if (opt.value)
            walk(*opt.value, visit);
    for (const auto& d : node.decls)
        if (d.initializer)
            walk(*d.initializer, visit);
}

const FunctionDef* ContractDef::find_function(std::string_view fname) const noexcept
{
    const auto it = std::find_if(functions.begin(), functions.end(), [&](const FunctionDef& f) { return f.name == fname; });
    return it == functions.end() ? nullptr : &*it;
}

const VarDecl* ContractDef::find_state_var(std::string_view vname) const noexcept
{
    const auto it = std::find_if(state_vars.begin(), state_vars.end(), [&](const VarDecl& v) { return v.name == vname; });
    return it == state_vars.end() ? nullptr : &*it;
}

std::string_view SourceUnit::line_text(std::uint32_t line) const noexcept
{
    std::string_view src(source);
    std::uint32_t current = 1;
    std::size_t start = 0;
    while (current < line)
    {
        const auto nl = src.find('\n', start);
        if (nl == std::string_view::npos)
            return {};
        start = nl + 1;
        ++current;
    }
    auto end = src.find('\n', start);
    if (end == std::string_view::npos)
        end = src.size();
    auto text = src.substr(start, end - start);
    if (!text.empty() && text.back() == '\r')
        text.remove_suffix(1);
    return text;
}

std::vector<const ContractDef*> SourceUnit::scopes() const
{
    std::vector<const ContractDef*> out;
    out.reserve(contracts.size() + 1);
    for (const auto& c : contracts)
        out.push_back(&c);
    out.push_back(&file_scope);
    return out;
}

std::string canonical_signature(const FunctionDef& fn)
{
    std::string sig = fn.name + "(";
    for (std::size_t i = 0; i < fn.params.size(); ++i)
    {
        if (i > 0)
            sig += ',';
        sig += fn.params[i].type.name;
    }
    return sig + ")";
}
}  // namespace swelint::sol
