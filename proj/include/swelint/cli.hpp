// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "swelint/engine.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace swelint::cli
{
inline constexpr int exit_clean = 0;
inline constexpr int exit_findings = 1;
inline constexpr int exit_usage = 2;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Applies a JSON configuration document to `config`. Throws UsageError on
/// unknown keys or bad values.
void apply_config_file(std::string_view json_text, ScanConfig& config);

/// Files under `paths` routed by extension, sorted and without duplicates.
/// Missing paths are reported in `missing`.
std::vector<std::pair<std::string, Language>> discover(const std::vector<std::string>& paths, LanguageFilter filter,
    std::vector<std::string>& missing);
}  // namespace swelint::cli
