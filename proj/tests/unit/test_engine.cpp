#include "doctest.h"

#include "../support/support.hpp"

#include "json.hpp"

#include <algorithm>

using namespace swelint;
using namespace swelint::test;

namespace
{
std::string fig12_with_suppression(std::string_view directive)
{
    auto src = read_file(corpus_dir() / "figures/fig12.sol");
    const auto at = src.find("return block");
    REQUIRE(at != std::string::npos);
    const auto line_start = src.rfind('\n', at) + 1;
    const auto indent = src.substr(line_start, at - line_start);
    src.insert(line_start, indent + std::string(directive) + "\n");
    return src;
}
}  // namespace

TEST_CASE("suppression comments parse")
{
    const auto one = parse_suppression("// swelint-disable-next-line SWE-116", 4);
    REQUIRE(one.suppression);
    CHECK(one.suppression->rules == std::set<SweId>{SweId{116}});
    CHECK(one.suppression->line == 4);
    const auto many = parse_suppression("// swelint-disable-next-line SWE-101, SWE-116", 1);
    REQUIRE(many.suppression);
    CHECK(many.suppression->rules.size() == 2);
    const auto all = parse_suppression("/* swelint-disable-next-line all */", 1);
    REQUIRE(all.suppression);
    CHECK(all.suppression->all);
    CHECK_FALSE(parse_suppression("// ordinary comment", 1).suppression);
    CHECK(parse_suppression("// ordinary comment", 1).error.empty());
    CHECK_FALSE(parse_suppression("// swelint-disable-next-line SWE-x", 1).error.empty());
    CHECK_FALSE(parse_suppression("// swelint-disable-next-line", 1).error.empty());
}

TEST_CASE("suppression removes exactly the named finding on the next line")
{
    const auto base = run_scan(load_sources({{"fig12.sol", read_file(corpus_dir() / "figures/fig12.sol")}}), {});
    const auto quiet = run_scan(load_sources({{"fig12.sol", fig12_with_suppression("// swelint-disable-next-line SWE-116")}}), {});
    CHECK(count_findings(base, "fig12.sol", 116) == 1);
    CHECK(count_findings(quiet, "fig12.sol", 116) == 0);
    CHECK(quiet.findings.size() + 1 == base.findings.size());
    CHECK(quiet.rule_stats == base.rule_stats);

    const auto other = run_scan(load_sources({{"fig12.sol", fig12_with_suppression("// swelint-disable-next-line SWE-101")}}), {});
    CHECK(count_findings(other, "fig12.sol", 116) == 1);

    ScanConfig ignoring;
    ignoring.honor_suppressions = false;
    const auto kept = run_scan(load_sources({{"fig12.sol", fig12_with_suppression("// swelint-disable-next-line SWE-116")}}), ignoring);
    CHECK(count_findings(kept, "fig12.sol", 116) == 1);
}

TEST_CASE("malformed suppressions become diagnostics")
{
    const auto report = run_scan(load_sources({{"fig12.sol", fig12_with_suppression("// swelint-disable-next-line SWE-abc")}}), {});
    CHECK(count_findings(report, "fig12.sol", 116) == 1);
    CHECK(report.diagnostics.size() == 1);
}

TEST_CASE("rule selection and severity overrides")
{
    ScanConfig only;
    only.enabled = {SweId{103}};
    const auto r1 = scan_corpus({"figures/fig03.sol"}, only);
    CHECK(std::all_of(r1.findings.begin(), r1.findings.end(), [](const Finding& f) { return f.rule.number == 103; }));
    CHECK_FALSE(r1.findings.empty());

    ScanConfig without;
    without.disabled = {SweId{101}};
    CHECK(count_findings(scan_corpus({"figures/fig03.sol"}, without), "figures/fig03.sol", 101) == 0);

    ScanConfig louder;
    louder.severity_overrides[SweId{103}] = Severity::high;
    const auto r2 = scan_corpus({"figures/fig03.sol"}, louder);
    for (const auto& f : r2.findings)
        if (f.rule.number == 103)
            CHECK(f.severity == Severity::high);
}

TEST_CASE("exit codes follow the severity threshold")
{
    const auto report = scan_corpus({"figures/fig12.sol"});
    REQUIRE(report.findings.size() == 1);
    CHECK(report.findings[0].severity == Severity::low);
    CHECK(exit_code(report, Severity::high) == 0);
    CHECK(exit_code(report, Severity::low) == 1);
    CHECK(exit_code(report, Severity::info) == 1);
    CHECK(exit_code(ScanReport{}, Severity::info) == 0);
}

TEST_CASE("rule statistics count every fired rule")
{
    const auto report = scan_corpus({"figures/fig04.sol", "figures/fig15.sol"});
    CHECK(report.rule_stats.at(SweId{103}) == 15);
    CHECK(report.rule_stats.at(SweId{120}) == 2);
    CHECK_FALSE(report.rule_stats.contains(SweId{166}));
    std::size_t total = 0;
    for (const auto& [id, n] : report.rule_stats)
        total += n;
    CHECK(total == report.findings.size());
}

TEST_CASE("findings are ordered and rendered")
{
    const auto report = scan_corpus({"figures/fig15.sol", "figures/fig02.sol"});
    CHECK(report.files_scanned == 2);
    CHECK(std::is_sorted(report.findings.begin(), report.findings.end(), [](const Finding& a, const Finding& b) {
        return std::tie(a.path, a.span.offset, a.rule) < std::tie(b.path, b.span.offset, b.rule);
    }));
    const auto text = render_text(report);
    CHECK(text.starts_with("figures/fig02.sol:1:1 SWE-102 info "));
    CHECK(text.find("\nfigures/fig02.sol:5:14 SWE-100 medium ") != std::string::npos);
    
    const auto doc = nlohmann::json::parse(render_json(report));
    CHECK(doc["tool_version"] == std::string(tool_version));
    CHECK(doc["files_scanned"] == 2);
    CHECK(doc["findings"].size() == report.findings.size());
    const auto& first = doc["findings"][0];
    for (const auto* key : {"rule", "severity", "confidence", "path", "line", "column", "end_line", "end_column",
             "construct", "message", "snippet"})
        CHECK_MESSAGE(first.contains(key), key);
    CHECK(doc["rule_stats"]["SWE-120"] == 2);
}

TEST_CASE("parallel and serial scans agree")
{
    auto files = list_corpus("figures");
    const auto serial = render_json(scan_corpus(files));
    std::reverse(files.begin(), files.end());
    auto config = fixture_config();
    config.jobs = 4;
    CHECK(render_json(scan_corpus(files, config)) == serial);
}

TEST_CASE("unreadable paths become diagnostics")
{
    const auto input = load_inputs({{"/nonexistent/x.sol", Language::solidity}});
    CHECK(input.solidity.empty());
    REQUIRE(input.diagnostics.size() == 1);
    CHECK(input.diagnostics[0].path == "/nonexistent/x.sol");
}
