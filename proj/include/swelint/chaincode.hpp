// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "swelint/rule.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace swelint::chaincode
{
using sol::Span;

enum class GoTokenKind
{
    identifier,
    number,
    string,  // interpreted, raw or rune literal, quotes included
    op,
    comment
};

struct GoToken
{
    GoTokenKind kind = GoTokenKind::op;
    std::string text;
    Span span;
};

struct ImportSpec
{
    std::string path;
    Span span;
};

/// A function body. Token indices refer to ChaincodeFile::tokens and cover
/// the tokens strictly between the braces.
struct FuncRegion
{
    std::string name;      // "<package>" for the top-level pseudo region
    std::string receiver;  // receiver type name or empty
    std::uint32_t first_line = 0;
    std::uint32_t last_line = 0;
    std::vector<std::size_t> token_indices;

    [[nodiscard]] std::string construct() const { return receiver.empty() ? name : receiver + "." + name; }
};

struct PackageVar
{
    std::string name;
    std::string type;  // declared type text, may be empty when inferred
    std::uint32_t line = 0;
    Span span;
};

struct StructType
{
    std::string name;
    std::vector<PackageVar> fields;
    Span span;
};

/// Lightweight structural view of a Go chaincode file.
struct ChaincodeFile
{
    std::string path;
    std::string source;
    std::vector<GoToken> tokens;    // comments excluded
    std::vector<GoToken> comments;
    std::vector<ImportSpec> imports;
    std::vector<FuncRegion> func_regions;  // declared functions, source order
    FuncRegion top_level;                  // statements outside any function
    std::vector<PackageVar> package_level_vars;
    std::vector<StructType> structs;
    std::set<std::string> map_typed_names;
    std::vector<std::pair<Span, std::string>> diagnostics;

    [[nodiscard]] std::string_view line_text(std::uint32_t line) const noexcept;
    /// Function regions followed by the top-level pseudo region.
    [[nodiscard]] std::vector<const FuncRegion*> regions() const;
};

ChaincodeFile parse_chaincode(std::string_view source, std::string path);

struct ChaincodeOptions
{
    /// Import paths that do not trigger SWE-171. "prefix/*" admits every
    /// path below prefix; "!path" excludes a path.
    std::vector<std::string> allowlist = default_allowlist();

    static std::vector<std::string> default_allowlist();
};

/// Parses an allowlist file: a JSON array of pattern strings.
std::vector<std::string> load_allowlist(std::string_view json_text);

bool import_allowed(std::string_view path, const std::vector<std::string>& allowlist);

using ChaincodeCheck = void (*)(const ChaincodeFile&, const ChaincodeOptions&, std::vector<RawFinding>&);

struct ChaincodeRule
{
    DetectorRule meta;
    ChaincodeCheck check = nullptr;
};

const std::vector<ChaincodeRule>& chaincode_rules();
std::vector<DetectorRule> chaincode_rule_set();
}  // namespace swelint::chaincode
