// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "swelint/common.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

/// Machine-readable catalogue of SWE weakness classes.
///
/// Numbering starts at 100 so that codes line up with the SWC registry. Ids in
/// the 900 block hold issues that were considered and eliminated; a handful of
/// numbers below 177 are reserved gaps with no content.
namespace swelint::registry
{
enum class Blockchain
{
    ethereum,
    hyperledger_fabric,
    eosio,
    vnt_chain,
    generic
};

enum class SourceLanguage
{
    solidity,
    go_chaincode,
    cpp_eosio,
    any
};

enum class Status
{
    active,
    eliminated,
    reserved
};

enum class Detectability
{
    automated,
    heuristic,
    cross_ref,
    manual,
    platform_out_of_scope,
    deprecated
};

std::string_view to_string(Blockchain v) noexcept;
std::string_view to_string(SourceLanguage v) noexcept;
std::string_view to_string(Status v) noexcept;
std::string_view to_string(Detectability v) noexcept;

// Throw UsageError on unknown spellings.
Blockchain parse_blockchain(std::string_view text);
SourceLanguage parse_language(std::string_view text);
Status parse_status(std::string_view text);
Detectability parse_detectability(std::string_view text);

struct RegistryEntry
{
    SweId id;
    std::string name;
    std::vector<std::string> aliases;
    std::set<Blockchain> blockchains;
    std::set<SourceLanguage> source_languages;
    Status status = Status::active;
    std::optional<Detectability> detectability;
    std::vector<std::string> cross_refs;
    std::optional<Severity> default_severity;
    std::string description;
    std::optional<std::string> elimination_reason;
    /// Usually one id; SWE-145 points at two.
    std::vector<SweId> cross_ref_target;

    friend bool operator==(const RegistryEntry&, const RegistryEntry&) = default;
};

struct Violation
{
    SweId id;
    std::string invariant;
    std::string message;
};

class Registry
{
public:
    Registry() = default;
    explicit Registry(std::vector<RegistryEntry> entries);

    [[nodiscard]] const std::vector<RegistryEntry>& entries() const noexcept { return entries_; }
    [[nodiscard]] const RegistryEntry* find(SweId id) const noexcept;

    friend bool operator==(const Registry&, const Registry&) = default;

private:
    std::vector<RegistryEntry> entries_;  // ascending id
};

/// Syntax or schema problem in a registry file.
class LoadError : public std::runtime_error
{
public:
    LoadError(std::string message, std::size_t line)
      : std::runtime_error(std::move(message)), line_(line)
    {}
    /// 1-based; 0 when the problem is not tied to a line.
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Registry parsed but breaks one or more invariants.
class ValidationError : public std::runtime_error
{
public:
    explicit ValidationError(std::vector<Violation> violations);
    [[nodiscard]] const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

class LookupError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class NotFoundError : public LookupError
{
public:
    using LookupError::LookupError;
};

class ReservedIdError : public LookupError
{
public:
    using LookupError::LookupError;
};

/// Bytes of the registry file compiled into the tool.
std::string_view bundled_registry_text() noexcept;

Registry load_registry(std::string_view text);
/// Loads the bundled copy once and returns it on every later call.
const Registry& bundled_registry();

/// Canonical file form; `load_registry(serialize_registry(r)) == r`.
std::string serialize_registry(const Registry& registry);

std::vector<Violation> validate_registry(const Registry& registry);

/// Key may be "SWE-116", "116", a canonical name or an alias (case and
/// whitespace insensitive).
const RegistryEntry& lookup_entry(const Registry& registry, std::string_view key);

struct EntryFilter
{
    std::optional<Blockchain> blockchain;
    std::optional<Status> status;
    std::optional<Detectability> detectability;
    std::optional<SourceLanguage> language;
};

std::vector<const RegistryEntry*> list_entries(const Registry& registry, const EntryFilter& filter);
}  // namespace swelint::registry
