// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "swelint/keccak.hpp"
#include "swelint/rule.hpp"
#include "swelint/symbols.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace swelint::rules
{
/// Known-vulnerable import for SWE-153. `import_path_pattern` matches as an
/// exact prefix of the import path text.
struct Advisory
{
    std::string import_path_pattern;
    std::string affected;  // version constraint text, e.g. "<0.8.0"
    sol::VersionSet affected_set = sol::VersionSet::all();
    std::string id;
    std::string description;
    Severity severity = Severity::medium;
};

/// Parses an advisory file: a JSON array of objects with the keys
/// import_path_pattern, affected, id, description and optional severity.
std::vector<Advisory> load_advisories(std::string_view json_text);

std::vector<std::string> default_secret_names();

struct SolidityOptions
{
    sol::Version minimum_compiler{0, 8, 0};
    std::vector<std::string> secret_names = default_secret_names();
    std::vector<Advisory> advisories;
};

/// Every Solidity file of one scan with its resolved symbols.
struct SolidityProgram
{
    std::vector<const sol::SourceUnit*> units;
    std::vector<sol::SymbolTable> symbols;  // parallel to units
    std::unique_ptr<sol::ContractIndex> index;
    SolidityOptions options;

    /// Resolves symbols for every unit against all the others.
    static SolidityProgram build(std::vector<const sol::SourceUnit*> units, SolidityOptions options);
    [[nodiscard]] const sol::SymbolTable* symbols_of(const sol::SourceUnit* unit) const noexcept;
    [[nodiscard]] const sol::ContractSymbols* symbols_of(const sol::ContractDef* c) const noexcept;
};

class FileAnalysis;

using FileCheck = void (*)(const FileAnalysis&, std::vector<RawFinding>&);
using ProgramCheck = void (*)(const SolidityProgram&, std::vector<RawFinding>&);

struct SolidityRule
{
    DetectorRule meta;
    FileCheck file_check = nullptr;        // per-file rules
    ProgramCheck program_check = nullptr;  // cross-file rules (SWE-123, SWE-158)
};

const std::vector<SolidityRule>& solidity_rules();
std::vector<DetectorRule> solidity_rule_set();

using RuleFilter = std::function<bool(const DetectorRule&)>;

/// Runs the per-file rules accepted by `filter` on one unit of `program`.
std::vector<RawFinding> run_file_rules(const SolidityProgram& program, std::size_t unit_index, const RuleFilter& filter);

/// Runs the cross-file rules accepted by `filter`.
std::vector<RawFinding> run_program_rules(const SolidityProgram& program, const RuleFilter& filter);

/// SWE-158 over every contract of the program, including proxy targets.
std::vector<RawFinding> find_selector_clashes(const SolidityProgram& program);
}  // namespace swelint::rules
