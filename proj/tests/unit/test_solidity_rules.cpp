#include "doctest.h"

#include "../support/expectations.hpp"
#include "../support/support.hpp"

#include "swelint/solidity_rules.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

using namespace swelint;
using namespace swelint::test;

namespace
{
ScanReport scan_source(const std::string& source, const ScanConfig& config = {})
{
    return run_scan(load_sources({{"t.sol", source}}), config);
}

std::multiset<int> rules_of(const ScanReport& report)
{
    std::multiset<int> out;
    for (const auto& f : report.findings)
        out.insert(f.rule.number);
    return out;
}

int fixture_rule(const std::string& path)
{
    const auto stem = std::filesystem::path(path).stem().string();
    return std::stoi(stem.substr(3, 3));
}
}  // namespace

TEST_CASE("every Solidity rule is catalogued once with a check")
{
    const auto& rules = rules::solidity_rules();
    CHECK(rules.size() == 50);
    std::set<int> ids;
    for (const auto& r : rules)
    {
        ids.insert(r.meta.id.number);
        CHECK((r.file_check != nullptr) != (r.program_check != nullptr));
        CHECK(r.meta.language == Language::solidity);
    }
    CHECK(ids.size() == rules.size());
}

TEST_CASE("transcribed examples yield the expected findings")
{
    const auto report = scan_corpus(list_corpus("figures", ".sol"));
    for (const auto& e : solidity_expectations)
    {
        INFO(e.file, " SWE-", e.rule, " at ", e.construct);
        CHECK(count_findings(report, e.file, e.rule, e.construct) >= e.count);
    }
    CHECK(report.diagnostics.empty());
}

TEST_CASE("overlapping rules keep the more specific finding")
{
    const auto report = scan_corpus({"figures/fig17.sol", "figures/fig33.sol"});
    CHECK(count_findings(report, "figures/fig17.sol", 126) == 1);
    CHECK(count_findings(report, "figures/fig17.sol", 104) == 0);
    CHECK(count_findings(report, "figures/fig33.sol", 113) == 1);
    CHECK(count_findings(report, "figures/fig33.sol", 157) == 0);
}

TEST_CASE("positive fixtures fire their rule")
{
    const auto files = list_corpus("fixtures/positive", ".sol");
    const auto report = scan_corpus(files);
    for (const auto& file : files)
    {
        INFO(file);
        CHECK(count_findings(report, file, fixture_rule(file)) >= 1);
    }
}

TEST_CASE("fixed variants are free of high-severity findings and of their rule")
{
    const auto files = list_corpus("fixtures/fixed", ".sol");
    CHECK(files.size() == rules::solidity_rules().size());
    const auto report = scan_corpus(files);
    for (const auto& f : report.findings)
    {
        INFO(f.path, ": ", f.rule.str(), " ", f.message);
        CHECK(f.severity != Severity::high);
        CHECK(f.rule.number != fixture_rule(f.path));
    }
    CHECK(report.diagnostics.empty());
}

TEST_CASE("Solidity golden report")
{
    const auto report = scan_corpus(solidity_golden_files());
    const auto result = compare_golden("solidity.json", render_json(report));
    INFO(result.detail);
    CHECK(result.ok);
}

TEST_CASE("compiler-version gating")
{
    const std::string body = "contract C { uint256 public count = 1;\n function run(uint256 input) public { count -= input; } }\n";
    CHECK(rules_of(scan_source("pragma solidity ^0.4.19;\n" + body)).contains(101));
    CHECK_FALSE(rules_of(scan_source("pragma solidity 0.8.0;\n" + body)).contains(101));
    CHECK_FALSE(rules_of(scan_source("pragma solidity >=0.4.0;\npragma solidity 0.8.0;\n" + body)).contains(101));
    CHECK(rules_of(scan_source("pragma solidity ^0.7.0;\npragma solidity >=0.8.0;\n" + body)).contains(101));
    CHECK(rules_of(scan_source(body)).contains(101));
}

TEST_CASE("SWE-101 respects unchecked blocks and constant loop bounds")
{
    const auto r = rules_of(scan_source(R"(pragma solidity ^0.7.0;
contract C {
    uint256 public t;
    function a(uint256 x) public { for (uint256 i = 0; i < 10; i++) { t = t + x; } }
}
)"));
    CHECK(r.count(101) == 1);
    CHECK(rules_of(scan_source("pragma solidity 0.8.1;\ncontract C { function f(uint8 a) public pure returns (uint8) { unchecked { return a + 1; } } }"))
              .count(101) == 0);
}

TEST_CASE("SWE-116 covers comparisons and raw block values")
{
    const auto r = rules_of(scan_source(R"(pragma solidity 0.8.19;
contract T {
    uint256 public start;
    function open() public view returns (bool) { return block.timestamp > start + 1 days; }
    function lucky() public view returns (bool) { if (block.number % 2 == 0) { return true; } return false; }
}
)"));
    CHECK(r.count(116) == 2);
}

TEST_CASE("SWE-129 needs the spacing of a typo")
{
    CHECK(rules_of(scan_source("pragma solidity 0.8.19;\ncontract C { int x; function f() public { x =+ 1; x =- 1; } }")).count(129) == 2);
    CHECK(rules_of(scan_source("pragma solidity 0.8.19;\ncontract C { int x; function f() public { x = -1; x=-1; } }")).count(129) == 0);
}

TEST_CASE("SWE-136 honours configured secret names")
{
    const std::string src = "pragma solidity 0.8.19;\ncontract C { uint256 private pinCode; }";
    CHECK(rules_of(scan_source(src)).count(136) == 0);
    ScanConfig config;
    config.solidity.secret_names = {"pin"};
    CHECK(rules_of(scan_source(src, config)).count(136) == 1);
}

TEST_CASE("SWE-153 matches advisories on path and version")
{
    const auto advisories = rules::load_advisories(R"([{"import_path_pattern": "openzeppelin", "id": "A-1", "affected": "<0.6.0"}])");
    REQUIRE(advisories.size() == 1);
    ScanConfig config;
    config.solidity.advisories = advisories;
    CHECK(rules_of(scan_source("pragma solidity ^0.5.0;\nimport \"openzeppelin/Ownable.sol\";", config)).count(153) == 1);
    CHECK(rules_of(scan_source("pragma solidity 0.8.19;\nimport \"openzeppelin/Ownable.sol\";", config)).count(153) == 0);
    CHECK(rules_of(scan_source("pragma solidity ^0.5.0;\nimport \"other/Ownable.sol\";", config)).count(153) == 0);
    CHECK_THROWS_AS(rules::load_advisories(R"([{"id": "missing pattern"}])"), UsageError);
}

TEST_CASE("SWE-158 collision is found by the selector search")
{
    const auto input = load_corpus({"fixtures/positive/swe158.sol"});
    std::vector<const sol::SourceUnit*> units{&input.solidity.front()};
    const auto program = rules::SolidityProgram::build(units, {});
    const auto clashes = rules::find_selector_clashes(program);
    REQUIRE(clashes.size() == 1);
    CHECK(clashes.front().message.find("4f38fb44") != std::string::npos);
}
