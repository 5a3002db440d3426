// Acceptance runner: one PASS/FAIL line per criterion.

#include "support/expectations.hpp"
#include "support/keccak_oracle.hpp"
#include "support/support.hpp"

#include "swelint/cli.hpp"
#include "swelint/keccak.hpp"
#include "swelint/parser.hpp"
#include "swelint/registry.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace swelint;
using namespace swelint::test;

namespace
{
using Clock = std::chrono::steady_clock;

struct Outcome
{
    bool pass = true;
    std::string detail;

    void require(bool cond, std::string_view what)
    {
        if (!cond)
        {
            pass = false;
            if (!detail.empty())
                detail += "; ";
            detail += what;
        }
    }
};

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome registry_integrity()
{
    Outcome o;
    const auto t0 = Clock::now();
    const auto reg = registry::load_registry(registry::bundled_registry_text());
    o.require(registry::validate_registry(reg).empty(), "validation errors");
    std::vector<int> active;
    std::vector<int> reserved;
    std::size_t eliminated = 0;
    for (const auto& e : reg.entries())
    {
        if (e.status == registry::Status::active)
            active.push_back(e.id.number);
        else if (e.status == registry::Status::reserved)
            reserved.push_back(e.id.number);
        else
            ++eliminated;
    }
    std::vector<int> want_active;
    for (int id = 100; id <= 176; ++id)
        if (id != 105 && id != 106 && id != 108 && id != 130 && id != 131)
            want_active.push_back(id);
    o.require(active == want_active, "active ids " + std::to_string(active.size()));
    o.require(reserved == std::vector<int>{105, 106, 108, 130, 131}, "reserved ids");
    o.require(eliminated == 11, "eliminated count " + std::to_string(eliminated));
    o.require(registry::lookup_entry(reg, "time manipulation").id.number == 116, "alias");
    const auto t = seconds_since(t0);
    o.require(t < 1.0, "runtime " + std::to_string(t) + "s");
    return o;
}

Outcome solidity_corpus()
{
    Outcome o;
    const auto t0 = Clock::now();
    ScanConfig config = fixture_config();
    config.jobs = 1;
    const auto report = scan_corpus(list_corpus("figures", ".sol"), config);
    const auto t = seconds_since(t0);
    for (const auto& e : solidity_expectations)
        o.require(count_findings(report, e.file, e.rule, e.construct) >= e.count,
            std::string(e.file) + " SWE-" + std::to_string(e.rule));

    const auto golden = compare_golden("solidity.json", render_json(scan_corpus(solidity_golden_files(), config)));
    o.require(golden.ok, golden.detail);

    const auto fixed = scan_corpus(list_corpus("fixtures/fixed", ".sol"), config);
    for (const auto& f : fixed.findings)
        o.require(f.severity != Severity::high, "fixed variant " + f.path + " " + f.rule.str());
    o.require(t < 5.0, "runtime " + std::to_string(t) + "s");
    if (o.pass)
        o.detail = std::to_string(report.findings.size()) + " findings in " + std::to_string(t) + "s";
    return o;
}

Outcome chaincode_corpus()
{
    Outcome o;
    const auto report = scan_corpus(list_corpus("figures", ".go"));
    for (const auto& e : chaincode_expectations)
        o.require(count_findings(report, e.file, e.rule) >= e.count, std::string(e.file));
    const auto clean = scan_corpus(list_corpus("chaincode/clean", ".go"));
    o.require(clean.findings.empty() && clean.files_scanned > 0, "clean fixture has findings");
    const auto golden = compare_golden("chaincode.json", render_json(scan_corpus(chaincode_golden_files())));
    o.require(golden.ok, golden.detail);
    return o;
}

Outcome keccak_oracle()
{
    Outcome o;
    o.require(to_hex(keccak256("")) == "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470", "empty");
    o.require(to_hex(keccak256("abc")) == "4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45", "abc");
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> length(0, 512);
    int mismatches = 0;
    for (int i = 0; i < 1000; ++i)
    {
        std::vector<std::uint8_t> data(length(rng));
        for (auto& b : data)
            b = static_cast<std::uint8_t>(rng());
        const auto a = oracle::keccak256(data);
        const auto b = keccak256(std::span<const std::uint8_t>(data));
        mismatches += !std::equal(a.begin(), a.end(), b.begin());
    }
    o.require(mismatches == 0, std::to_string(mismatches) + " oracle mismatches");
    o.require(selector("transfer(address,uint256)").hex() == "a9059cbb", "transfer selector");
    const auto report = scan_corpus({"fixtures/positive/swe158.sol"});
    o.require(count_findings(report, "fixtures/positive/swe158.sol", 158) == 1, "collision fixture not flagged");
    return o;
}

Outcome determinism()
{
    Outcome o;
    std::vector<std::string> files;
    for (const auto* sub : {"figures", "fixtures/positive", "fixtures/fixed", "chaincode/positive", "chaincode/clean"})
        for (const auto& rel : list_corpus(sub))
            files.push_back((corpus_dir() / rel).string());
    auto run_once = [&](unsigned seed) {
        auto shuffled = files;
        std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937(seed));
        std::vector<std::string> args{"scan", "--format", "json"};
        args.insert(args.end(), shuffled.begin(), shuffled.end());
        std::ostringstream out;
        std::ostringstream err;
        (void)cli::run(args, out, err);
        return out.str();
    };
    const auto a = run_once(1);
    const auto b = run_once(2);
    o.require(!a.empty(), "empty report");
    o.require(a == b, "reports differ");
    return o;
}

std::size_t rule_count(const std::string& source, int rule)
{
    const auto report = run_scan(load_sources({{"gate.sol", source}}), {});
    return count_findings(report, "gate.sol", rule);
}

std::string without_pragma(const std::string& source)
{
    std::istringstream in(source);
    std::string out;
    for (std::string line; std::getline(in, line);)
        if (!line.starts_with("pragma solidity"))
            out += line + "\n";
    return out;
}

Outcome pragma_gating()
{
    Outcome o;
    const auto fig3 = without_pragma(read_file(corpus_dir() / "figures/fig03.sol"));
    o.require(rule_count("pragma solidity ^0.4.19;\n" + fig3, 101) >= 1, "fig3 under ^0.4.19");
    o.require(rule_count("pragma solidity 0.8.0;\n" + fig3, 101) == 0, "fig3 under 0.8.0");

    std::istringstream fig4(read_file(corpus_dir() / "figures/fig04.sol"));
    std::size_t lines = 0;
    for (std::string line; std::getline(fig4, line);)
    {
        if (!line.starts_with("pragma"))
            continue;
        ++lines;
        o.require(rule_count(line + "\n", 103) == 1, "no SWE-103 for '" + line + "'");
    }
    o.require(lines == 14, "fig4 has " + std::to_string(lines) + " pragma lines");
    o.require(rule_count("pragma solidity 0.8.0;\n", 103) == 0, "SWE-103 on exact pragma");
    return o;
}

Outcome overlap_precedence()
{
    Outcome o;
    const auto report = scan_corpus({"figures/fig33.sol", "figures/fig17.sol"});
    o.require(count_findings(report, "figures/fig33.sol", 113) == 1, "fig33 SWE-113");
    o.require(count_findings(report, "figures/fig33.sol", 157) == 0, "fig33 SWE-157");
    o.require(count_findings(report, "figures/fig17.sol", 126) == 1, "fig17 SWE-126");
    for (const auto& f : report.findings)
        if (f.rule.number == 126)
            for (const auto& g : report.findings)
                o.require(!(g.rule.number == 104 && g.path == f.path && g.span.offset == f.span.offset &&
                              g.span.length == f.span.length),
                    "fig17 SWE-104 at the same span");
    return o;
}

Outcome suppression()
{
    Outcome o;
    const auto original = read_file(corpus_dir() / "figures/fig12.sol");
    const auto base = run_scan(load_sources({{"fig12.sol", original}}), {});
    const auto target = std::find_if(base.findings.begin(), base.findings.end(),
        [](const Finding& f) { return f.rule.number == 116; });
    if (target == base.findings.end())
    {
        o.require(false, "fig12 has no SWE-116");
        return o;
    }
    std::istringstream in(original);
    std::string edited;
    std::uint32_t n = 0;
    for (std::string line; std::getline(in, line);)
    {
        if (++n == target->span.line)
            edited += line.substr(0, line.find_first_not_of(" \t")) + "// swelint-disable-next-line SWE-116\n";
        edited += line + "\n";
    }
    const auto after = run_scan(load_sources({{"fig12.sol", edited}}), {});
    o.require(count_findings(after, "fig12.sol", 116) == 0, "SWE-116 still reported");
    o.require(after.findings.size() + 1 == base.findings.size(), "other findings changed");
    o.require(after.diagnostics.empty(), "diagnostics emitted");
    return o;
}
}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"registry integrity", registry_integrity},
        {"solidity corpus golden", solidity_corpus},
        {"chaincode corpus golden", chaincode_corpus},
        {"keccak and selector oracle", keccak_oracle},
        {"determinism", determinism},
        {"pragma gating", pragma_gating},
        {"overlap precedence", overlap_precedence},
        {"suppression", suppression},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        Outcome o;
        try
        {
            o = criteria[i].second();
        }
        catch (const std::exception& e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first;
        if (!o.detail.empty())
            std::cout << " (" << o.detail << ")";
        std::cout << "\n";
    }
    return failures == 0 ? 0 : 1;
}
