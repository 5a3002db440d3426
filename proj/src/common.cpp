// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

#include "swelint/common.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace swelint
{
std::optional<SweId> SweId::parse(std::string_view text)
{
    if (text.size() < 5)
        return std::nullopt;
    if (to_lower(text.substr(0, 4)) != "swe-")
        return std::nullopt;
    const auto digits = text.substr(4);
    if (digits.empty() || digits.size() > 6 || digits.front() == '0')
        return std::nullopt;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
        return std::nullopt;
    return SweId{value};
}

std::string_view to_string(Severity s) noexcept
{
    switch (s)
    {
    case Severity::info:
        return "info";
    case Severity::low:
        return "low";
    case Severity::medium:
        return "medium";
    case Severity::high:
        return "high";
    }
    return "info";
}

std::string_view to_string(Confidence c) noexcept
{
    switch (c)
    {
    case Confidence::low:
        return "low";
    case Confidence::medium:
        return "medium";
    case Confidence::high:
        return "high";
    }
    return "low";
}

std::optional<Severity> parse_severity(std::string_view text)
{
    const auto t = to_lower(text);
    if (t == "info")
        return Severity::info;
    if (t == "low")
        return Severity::low;
    if (t == "medium")
        return Severity::medium;
    if (t == "high")
        return Severity::high;
    return std::nullopt;
}

std::optional<Confidence> parse_confidence(std::string_view text)
{
    const auto t = to_lower(text);
    if (t == "low")
        return Confidence::low;
    if (t == "medium")
        return Confidence::medium;
    if (t == "high")
        return Confidence::high;
    return std::nullopt;
}

std::string to_lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
        [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) noexcept
{
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && is_space(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::string normalize_key(std::string_view s)
{
    std::string out;
    bool pending_space = false;
    for (const char ch : trim(s))
    {
        if (std::isspace(static_cast<unsigned char>(ch)))
        {
            pending_space = true;
            continue;
        }
        if (pending_space)
            out.push_back(' ');
        pending_space = false;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    return out;
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = s.find(sep, start);
        parts.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

bool icontains(std::string_view haystack, std::string_view needle)
{
    return to_lower(haystack).find(to_lower(needle)) != std::string::npos;
}
}  // namespace swelint
