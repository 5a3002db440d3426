// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "swelint/ast.hpp"
#include "swelint/chaincode.hpp"
#include "swelint/registry.hpp"
#include "swelint/rule.hpp"
#include "swelint/solidity_rules.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace swelint
{
enum class LanguageFilter
{
    auto_detect,
    solidity,
    go
};

enum class OutputFormat
{
    text,
    json
};

struct ScanConfig
{
    std::vector<std::string> paths;
    LanguageFilter language = LanguageFilter::auto_detect;
    std::set<SweId> enabled;  // empty: every rule
    std::set<SweId> disabled;
    std::map<SweId, Severity> severity_overrides;
    Severity fail_on = Severity::high;
    OutputFormat format = OutputFormat::text;
    std::optional<std::string> registry_path;
    std::optional<std::string> advisory_path;
    std::optional<std::string> allowlist_path;
    bool honor_suppressions = true;
    unsigned jobs = 1;

    rules::SolidityOptions solidity;
    chaincode::ChaincodeOptions chaincode;

    [[nodiscard]] bool rule_enabled(SweId id) const;
};

/// Parsed inputs of one scan.
struct ScanInput
{
    std::vector<sol::SourceUnit> solidity;
    std::vector<chaincode::ChaincodeFile> chaincode;
    std::vector<FileDiagnostic> diagnostics;  // unreadable files and the like
};

struct ScanReport
{
    std::string tool_version{swelint::tool_version};
    std::size_t files_scanned = 0;
    std::vector<Finding> findings;
    std::vector<FileDiagnostic> diagnostics;
    std::map<SweId, std::size_t> rule_stats;
};

/// Every rule of both languages, ordered by id.
std::vector<DetectorRule> all_rules();

/// Reads and parses files, `jobs` at a time. Paths that cannot be read
/// become diagnostics.
ScanInput load_inputs(const std::vector<std::pair<std::string, Language>>& files, unsigned jobs = 1);

ScanReport run_scan(const ScanInput& input, const ScanConfig& config);

/// A parsed `swelint-disable-next-line` comment.
struct Suppression
{
    std::uint32_t line = 0;  // line of the comment
    bool all = false;
    std::set<SweId> rules;
};

/// Parses a comment body; nullopt when it is not a suppression at all and an
/// error message when it is one but malformed.
struct SuppressionParse
{
    std::optional<Suppression> suppression;
    std::string error;
};
SuppressionParse parse_suppression(std::string_view comment_text, std::uint32_t line);

/// Drops findings whose start line directly follows a matching suppression.
std::vector<Finding> suppress(std::vector<Finding> findings, const std::vector<Suppression>& suppressions);

std::string render_text(const ScanReport& report);
std::string render_json(const ScanReport& report);
std::string render(const ScanReport& report, OutputFormat format);

/// 1 when some finding is at least as severe as `fail_on`, else 0.
int exit_code(const ScanReport& report, Severity fail_on) noexcept;
}  // namespace swelint
