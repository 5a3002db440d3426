// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "swelint/common.hpp"
#include "swelint/lexer.hpp"
#include "swelint/pragma.hpp"

#include <optional>
#include <string>
#include <vector>

namespace swelint
{
enum class Language
{
    solidity,
    go_chaincode
};

std::string_view to_string(Language l) noexcept;

/// Compiler-version predicate a rule needs before it is evaluated.
struct Applicability
{
    enum class Kind
    {
        always,
        admits_below,  // some admitted version is < version
        admits         // version itself is admitted
    };
    Kind kind = Kind::always;
    sol::Version version;

    static Applicability always() { return {}; }
    static Applicability admits_below(sol::Version v) { return {Kind::admits_below, v}; }
    static Applicability admits(sol::Version v) { return {Kind::admits, v}; }

    [[nodiscard]] bool evaluate(const sol::VersionSet& admissible) const noexcept;
    [[nodiscard]] std::string describe() const;
};

struct DetectorRule
{
    SweId id;
    std::string name;
    std::string trigger;
    Applicability applicability;
    Severity default_severity = Severity::medium;
    Confidence confidence = Confidence::medium;
    Language language = Language::solidity;
};

/// Absent pragma: always applicable.
bool applicable(const DetectorRule& rule, const sol::PragmaConstraint* pragma) noexcept;

/// Unit-level gate: all pragmas of a file are intersected. No pragma, or an
/// empty intersection, counts as applicable.
bool applicable(const DetectorRule& rule, const std::vector<sol::PragmaConstraint>& pragmas);

/// What a rule check produces; the engine fills in severity, confidence and
/// snippet.
struct RawFinding
{
    SweId rule;
    std::string path;
    sol::Span span;
    std::string construct;
    std::string message;
    std::optional<Severity> severity;  // per-finding override (advisories)
};

struct Finding
{
    SweId rule;
    Severity severity = Severity::medium;
    Confidence confidence = Confidence::medium;
    std::string path;
    sol::Span span;
    std::string construct;
    std::string message;
    std::string snippet;
};

struct FileDiagnostic
{
    std::string path;
    sol::Span span;
    std::string message;
};
}  // namespace swelint
