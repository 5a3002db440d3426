#include "support.hpp"

#include "swelint/parser.hpp"
#include "swelint/solidity_rules.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace swelint::test
{
namespace fs = std::filesystem;

fs::path corpus_dir()
{
    return SWELINT_TEST_CORPUS;
}

fs::path golden_dir()
{
    return SWELINT_TEST_GOLDEN;
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> list_corpus(std::string_view subdir, std::string_view ext)
{
    std::vector<std::string> out;
    for (const auto& e : fs::directory_iterator(corpus_dir() / subdir))
        if (e.is_regular_file() && e.path().string().ends_with(ext))
            out.push_back((fs::path(subdir) / e.path().filename()).generic_string());
    std::sort(out.begin(), out.end());
    return out;
}

ScanInput load_corpus(const std::vector<std::string>& relative_paths)
{
    ScanInput input;
    for (const auto& rel : relative_paths)
    {
        const auto text = read_file(corpus_dir() / rel);
        if (rel.ends_with(".go"))
            input.chaincode.push_back(chaincode::parse_chaincode(text, rel));
        else
            input.solidity.push_back(sol::parse_source(text, rel));
    }
    return input;
}

ScanInput load_sources(const std::vector<std::pair<std::string, std::string>>& sources)
{
    ScanInput input;
    for (const auto& [path, text] : sources)
        input.solidity.push_back(sol::parse_source(text, path));
    return input;
}

ScanConfig fixture_config()
{
    ScanConfig config;
    config.solidity.advisories = rules::load_advisories(read_file(corpus_dir() / "fixtures/advisories.json"));
    return config;
}

ScanReport scan_corpus(const std::vector<std::string>& relative_paths, const ScanConfig& config)
{
    return run_scan(load_corpus(relative_paths), config);
}

std::size_t count_findings(const ScanReport& report, std::string_view path, int rule, std::string_view construct)
{
    return static_cast<std::size_t>(std::count_if(report.findings.begin(), report.findings.end(), [&](const Finding& f) {
        return f.path == path && f.rule.number == rule && (construct.empty() || f.construct == construct);
    }));
}

GoldenResult compare_golden(std::string_view name, const std::string& actual)
{
    const auto path = golden_dir() / name;
    if (std::getenv("UPDATE_GOLDEN") != nullptr)
    {
        std::ofstream(path, std::ios::binary) << actual;
        return {true, "updated " + path.string()};
    }
    std::string expected;
    try
    {
        expected = read_file(path);
    }
    catch (const std::runtime_error& e)
    {
        return {false, e.what()};
    }
    if (expected == actual)
        return {true, {}};
    std::size_t line = 1;
    std::size_t i = 0;
    for (; i < std::min(expected.size(), actual.size()) && expected[i] == actual[i]; ++i)
        line += expected[i] == '\n';
    return {false, path.filename().string() + " differs from line " + std::to_string(line)};
}

std::vector<std::string> solidity_golden_files()
{
    auto files = list_corpus("figures", ".sol");
    const auto positive = list_corpus("fixtures/positive", ".sol");
    files.insert(files.end(), positive.begin(), positive.end());
    return files;
}

std::vector<std::string> chaincode_golden_files()
{
    auto files = list_corpus("figures", ".go");
    for (const auto* sub : {"chaincode/positive", "chaincode/clean"})
    {
        const auto more = list_corpus(sub, ".go");
        files.insert(files.end(), more.begin(), more.end());
    }
    return files;
}
}  // namespace swelint::test
