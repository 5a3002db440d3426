// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "swelint/lexer.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace swelint::sol
{
struct Version
{
    int major = 0;
    int minor = 0;
    int patch = 0;

    friend auto operator<=>(const Version&, const Version&) = default;
    [[nodiscard]] std::string str() const;
    /// Parses "0.8.0"; all three components required.
    static std::optional<Version> parse(std::string_view text);
};

/// Sorted, disjoint union of half-open version intervals [lo, hi).
class VersionSet
{
public:
    struct Interval
    {
        Version lo;
        Version hi;
        friend bool operator==(const Interval&, const Interval&) = default;
    };

    static VersionSet all();
    static VersionSet none() { return {}; }
    static VersionSet range(Version lo, Version hi);

    [[nodiscard]] VersionSet intersect(const VersionSet& other) const;
    [[nodiscard]] VersionSet unite(const VersionSet& other) const;
    [[nodiscard]] bool empty() const noexcept { return intervals_.empty(); }
    [[nodiscard]] bool contains(const Version& v) const noexcept;
    /// True when some admitted version is strictly below `bound`.
    [[nodiscard]] bool admits_below(const Version& bound) const noexcept;
    [[nodiscard]] std::optional<Version> lower_bound() const noexcept;
    [[nodiscard]] const std::vector<Interval>& intervals() const noexcept { return intervals_; }

    friend bool operator==(const VersionSet&, const VersionSet&) = default;

private:
    std::vector<Interval> intervals_;
};

enum class Comparator
{
    exact,
    caret,
    tilde,
    ge,
    gt,
    le,
    lt,
    wildcard,
    range
};

/// Version with optionally missing components ("0.4", "0", "0.4.*").
struct PartialVersion
{
    std::optional<int> major;
    std::optional<int> minor;
    std::optional<int> patch;

    [[nodiscard]] bool complete() const noexcept { return major && minor && patch; }
};

struct PragmaClause
{
    Comparator comparator = Comparator::exact;
    PartialVersion version;
    PartialVersion upper;  // only for range ("a - b")
};

/// A parsed `pragma solidity` constraint.
struct PragmaConstraint
{
    std::vector<PragmaClause> clauses;
    bool floating = true;
    VersionSet admissible = VersionSet::all();
    std::string text;        // constraint text between "solidity" and ';'
    std::string diagnostic;  // non-empty when the constraint could not be parsed
    Span span;               // of the whole directive when parsed from a file
};

/// Parses one pragma line such as "pragma solidity ^0.4.14;". Anything
/// unparseable yields floating=true, an all-versions admissible set and a
/// diagnostic.
PragmaConstraint parse_pragma(std::string_view line);

/// Parses only the constraint part (">=0.4.24 <=0.5.3").
PragmaConstraint parse_version_constraint(std::string_view constraint);
}  // namespace swelint::sol
