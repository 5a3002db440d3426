// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace swelint
{
inline constexpr std::string_view tool_version = "swelint 0.1.0";

/// Identifier of one weakness class, rendered "SWE-<number>".
struct SweId
{
    int number = 0;

    [[nodiscard]] std::string str() const { return "SWE-" + std::to_string(number); }

    /// Accepts "SWE-116" (any case). Leading zeros are rejected.
    static std::optional<SweId> parse(std::string_view text);

    friend auto operator<=>(const SweId&, const SweId&) = default;
};

enum class Severity
{
    info,
    low,
    medium,
    high
};

enum class Confidence
{
    low,
    medium,
    high
};

std::string_view to_string(Severity s) noexcept;
std::string_view to_string(Confidence c) noexcept;
std::optional<Severity> parse_severity(std::string_view text);
std::optional<Confidence> parse_confidence(std::string_view text);

/// Raised for invalid user input (bad flags, unknown enumeration values).
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s) noexcept;
/// Lowercases, trims and collapses internal whitespace runs to one space.
std::string normalize_key(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
bool icontains(std::string_view haystack, std::string_view needle);
}  // namespace swelint
