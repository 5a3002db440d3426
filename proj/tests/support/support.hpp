// Helpers shared by the unit tests and the acceptance runner.
#pragma once

#include "swelint/engine.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace swelint::test
{
std::filesystem::path corpus_dir();
std::filesystem::path golden_dir();

std::string read_file(const std::filesystem::path& path);

/// Corpus-relative paths under `subdir` ending in `ext`, sorted.
std::vector<std::string> list_corpus(std::string_view subdir, std::string_view ext = "");

/// Parses corpus files, reporting them under their corpus-relative paths.
ScanInput load_corpus(const std::vector<std::string>& relative_paths);

/// Parses in-memory Solidity sources keyed by display path.
ScanInput load_sources(const std::vector<std::pair<std::string, std::string>>& sources);

/// Configuration used for fixtures: bundled defaults plus the fixture advisories.
ScanConfig fixture_config();

ScanReport scan_corpus(const std::vector<std::string>& relative_paths, const ScanConfig& config = fixture_config());

std::size_t count_findings(const ScanReport& report, std::string_view path, int rule, std::string_view construct = "");

struct GoldenResult
{
    bool ok = false;
    std::string detail;
};

/// Compares `actual` with golden/<name>. With UPDATE_GOLDEN set in the
/// environment the golden file is rewritten instead.
GoldenResult compare_golden(std::string_view name, const std::string& actual);

/// Solidity files covered by the golden report: transcribed figures and positive fixtures.
std::vector<std::string> solidity_golden_files();
std::vector<std::string> chaincode_golden_files();
}  // namespace swelint::test
