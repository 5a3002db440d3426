#include "doctest.h"

#include "../support/support.hpp"

#include "swelint/cli.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace swelint;
namespace fs = std::filesystem;

namespace
{
struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string corpus(std::string_view rel)
{
    return (test::corpus_dir() / rel).string();
}

fs::path temp_file(std::string_view name, std::string_view content)
{
    const auto dir = fs::temp_directory_path() / "swelint-cli-tests";
    fs::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path, std::ios::binary) << content;
    return path;
}

std::size_t lines(std::string_view s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}
}  // namespace

TEST_CASE("scan exit codes")
{
    CHECK(run({"scan", corpus("fixtures/fixed/swe101.sol")}).code == cli::exit_clean);
    CHECK(run({"scan", corpus("figures/fig03.sol")}).code == cli::exit_findings);
    CHECK(run({"scan", "--fail-on", "info", corpus("figures/fig12.sol")}).code == cli::exit_findings);
    CHECK(run({"scan", corpus("figures/fig12.sol")}).code == cli::exit_clean);
    CHECK(run({"scan", "--bogus", corpus("figures/fig12.sol")}).code == cli::exit_usage);
    CHECK(run({"scan", "/nonexistent/path.sol"}).code == cli::exit_usage);
    CHECK(run({"scan", "--enable", "SWE-105", corpus("figures/fig12.sol")}).code == cli::exit_usage);
    CHECK(run({"scan", "--enable", "SWE-116", "--disable", "SWE-116", corpus("figures/fig12.sol")}).code == cli::exit_usage);
    CHECK(run({"scan", "--fail-on", "severe", corpus("figures/fig12.sol")}).code == cli::exit_usage);
    CHECK(run({}).code == cli::exit_usage);
}

TEST_CASE("scan text output")
{
    const auto r = run({"scan", corpus("figures/fig12.sol")});
    CHECK(r.out.find("fig12.sol:6:") != std::string::npos);
    CHECK(r.out.find("SWE-116 low") != std::string::npos);
}

TEST_CASE("scan json output is byte-identical across orderings and jobs")
{
    const auto a = run({"scan", "--format", "json", corpus("figures"), corpus("fixtures/positive")});
    const auto b = run({"scan", "--format", "json", "-j", "4", corpus("fixtures/positive"), corpus("figures")});
    CHECK(a.out == b.out);
    const auto doc = nlohmann::json::parse(a.out);
    CHECK(doc["files_scanned"] == 35 + 19);
}

TEST_CASE("language filter")
{
    const auto go = run({"scan", "--format", "json", "--lang", "go", "--fail-on", "info", corpus("figures")});
    CHECK(nlohmann::json::parse(go.out)["files_scanned"] == 4);
    CHECK(run({"scan", "--lang", "rust", corpus("figures")}).code == cli::exit_usage);
}

TEST_CASE("config file mirrors the flags and explicit flags win")
{
    const auto cfg = temp_file("cfg.json", R"({"fail_on": "info", "disable": ["SWE-103"], "format": "json"})");
    const auto r = run({"scan", "--config", cfg.string(), corpus("figures/fig03.sol")});
    CHECK(r.code == cli::exit_findings);
    const auto doc = nlohmann::json::parse(r.out);
    for (const auto& f : doc["findings"])
        CHECK(f["rule"] != "SWE-103");

    const auto quiet = run({"scan", "--config", cfg.string(), "--format", "text", "--fail-on", "high",
        corpus("figures/fig12.sol")});
    CHECK(quiet.code == cli::exit_clean);
    CHECK(quiet.out.starts_with(corpus("figures/fig12.sol")));

    const auto bad = temp_file("bad.json", R"({"fail_on": "info", "colour": true})");
    CHECK(run({"scan", "--config", bad.string(), corpus("figures/fig12.sol")}).code == cli::exit_usage);
    CHECK(run({"scan", "--config", "/nonexistent.json", corpus("figures/fig12.sol")}).code == cli::exit_usage);
}

TEST_CASE("apply_config_file")
{
    ScanConfig config;
    cli::apply_config_file(R"({"severity": {"SWE-116": "high"}, "jobs": 3, "min_compiler": "0.7.0",
        "secret_names": ["pin"], "suppressions": false, "lang": "sol"})", config);
    CHECK(config.severity_overrides.at(SweId{116}) == Severity::high);
    CHECK(config.jobs == 3);
    CHECK(config.solidity.minimum_compiler == sol::Version{0, 7, 0});
    CHECK(config.solidity.secret_names == std::vector<std::string>{"pin"});
    CHECK_FALSE(config.honor_suppressions);
    CHECK(config.language == LanguageFilter::solidity);
    CHECK_THROWS_AS(cli::apply_config_file("[1]", config), UsageError);
    CHECK_THROWS_AS(cli::apply_config_file(R"({"jobs": "many"})", config), UsageError);
}

TEST_CASE("suppression flag")
{
    const auto src = temp_file("supp.sol",
        "pragma solidity 0.8.19;\ncontract C {\n    function f() public view returns (bool) {\n"
        "        // swelint-disable-next-line SWE-116\n        return block.number > 5;\n    }\n}\n");
    CHECK(run({"scan", "--fail-on", "info", src.string()}).code == cli::exit_clean);
    CHECK(run({"scan", "--fail-on", "info", "--no-suppressions", src.string()}).code == cli::exit_findings);
}

TEST_CASE("registry subcommands")
{
    const auto list = run({"registry", "list"});
    CHECK(list.code == 0);
    CHECK(lines(list.out) == 88);
    CHECK(lines(run({"registry", "list", "--status", "active"}).out) == 72);
    CHECK(lines(run({"registry", "list", "--status", "reserved"}).out) == 5);

    const auto show = run({"registry", "show", "time manipulation"});
    CHECK(show.code == 0);
    CHECK(show.out.find("SWE-116") != std::string::npos);
    CHECK(run({"registry", "show", "SWE-105"}).code == cli::exit_usage);
    CHECK(run({"registry", "show", "SWE-999"}).code == cli::exit_usage);

    const auto exported = run({"registry", "export"});
    CHECK(registry::load_registry(exported.out) == registry::bundled_registry());
    const auto custom = temp_file("reg.json", exported.out);
    CHECK(run({"registry", "list", "--registry", custom.string()}).out == list.out);
    const auto broken = temp_file("broken.json", "[{]");
    CHECK(run({"registry", "list", "--registry", broken.string()}).code == cli::exit_usage);
}

TEST_CASE("selector and rules subcommands")
{
    const auto sel = run({"selector", "transfer(address,uint256)"});
    CHECK(sel.code == 0);
    CHECK(sel.out == "a9059cbb\n");
    CHECK(run({"selector", "transfer(address, uint256)"}).code == cli::exit_usage);
    const auto rules = run({"rules"});
    CHECK(lines(rules.out) == 64);
}

TEST_CASE("version flag")
{
    const auto r = run({"--version"});
    CHECK(r.code == 0);
    CHECK(r.out.find(std::string(tool_version)) != std::string::npos);
}
