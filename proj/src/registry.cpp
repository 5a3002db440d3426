// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

#include "swelint/registry.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace swelint::registry
{
namespace
{
using ordered_json = nlohmann::ordered_json;

template <typename Enum, std::size_t N>
struct EnumNames
{
    std::array<std::pair<Enum, std::string_view>, N> items;

    [[nodiscard]] std::string_view name(Enum v) const noexcept
    {
        for (const auto& [e, n] : items)
            if (e == v)
                return n;
        return {};
    }

    [[nodiscard]] std::optional<Enum> value(std::string_view text) const
    {
        for (const auto& [e, n] : items)
            if (n == text)
                return e;
        return std::nullopt;
    }
};

constexpr EnumNames<Blockchain, 5> blockchain_names{{{
    {Blockchain::ethereum, "ethereum"},
    {Blockchain::hyperledger_fabric, "hyperledger-fabric"},
    {Blockchain::eosio, "eosio"},
    {Blockchain::vnt_chain, "vnt-chain"},
    {Blockchain::generic, "generic"},
}}};

constexpr EnumNames<SourceLanguage, 4> language_names{{{
    {SourceLanguage::solidity, "solidity"},
    {SourceLanguage::go_chaincode, "go-chaincode"},
    {SourceLanguage::cpp_eosio, "cpp-eosio"},
    {SourceLanguage::any, "any"},
}}};

constexpr EnumNames<Status, 3> status_names{{{
    {Status::active, "active"},
    {Status::eliminated, "eliminated"},
    {Status::reserved, "reserved"},
}}};

constexpr EnumNames<Detectability, 6> detectability_names{{{
    {Detectability::automated, "automated"},
    {Detectability::heuristic, "heuristic"},
    {Detectability::cross_ref, "cross-ref"},
    {Detectability::manual, "manual"},
    {Detectability::platform_out_of_scope, "platform-out-of-scope"},
    {Detectability::deprecated, "deprecated"},
}}};

template <typename Names>
auto parse_enum(const Names& names, std::string_view text, std::string_view what)
{
    if (auto v = names.value(text))
        return *v;
    throw UsageError("unknown " + std::string(what) + " '" + std::string(text) + "'");
}

constexpr int first_eliminated_id = 900;
constexpr std::size_t expected_eliminated = 11;

std::vector<int> expected_active_ids()
{
    std::vector<int> ids{100, 101, 102, 103, 104, 107};
    for (int i = 109; i <= 129; ++i)
        ids.push_back(i);
    for (int i = 132; i <= 176; ++i)
        ids.push_back(i);
    return ids;
}

constexpr std::array<int, 5> expected_reserved_ids{105, 106, 108, 130, 131};

std::size_t line_of_offset(std::string_view text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

/// Offsets at which each top-level array element object starts.
std::vector<std::size_t> element_offsets(std::string_view text)
{
    std::vector<std::size_t> offsets;
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = 0; i < text.size(); ++i)
    {
        const char c = text[i];
        if (in_string)
        {
            if (c == '\\')
                ++i;
            else if (c == '"')
                in_string = false;
            continue;
        }
        if (c == '"')
            in_string = true;
        else if (c == '[' || c == '{')
        {
            if (depth == 1)
                offsets.push_back(i);
            ++depth;
        }
        else if (c == ']' || c == '}')
            --depth;
    }
    return offsets;
}

class EntryReader
{
public:
    EntryReader(const ordered_json& obj, std::size_t line) : obj_(obj), line_(line) {}

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw LoadError("line " + std::to_string(line_) + ": " + msg, line_);
    }

    [[nodiscard]] const ordered_json* field(const char* key) const
    {
        const auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    [[nodiscard]] std::string string_field(const char* key, bool required) const
    {
        const auto* v = field(key);
        if (v == nullptr)
        {
            if (required)
                fail(std::string("missing field '") + key + "'");
            return {};
        }
        if (!v->is_string())
            fail(std::string("field '") + key + "' must be a string");
        return v->get<std::string>();
    }

    [[nodiscard]] std::vector<std::string> string_list(const char* key) const
    {
        const auto* v = field(key);
        if (v == nullptr)
            return {};
        if (!v->is_array())
            fail(std::string("field '") + key + "' must be a list");
        std::vector<std::string> out;
        for (const auto& item : *v)
        {
            if (!item.is_string())
                fail(std::string("field '") + key + "' must contain strings");
            out.push_back(item.get<std::string>());
        }
        return out;
    }

    template <typename Names>
    [[nodiscard]] auto enum_value(const Names& names, const std::string& text, const char* key) const
    {
        if (auto v = names.value(text))
            return *v;
        fail(std::string("unknown ") + key + " '" + text + "'");
    }

    [[nodiscard]] SweId sweid(const std::string& text, const char* key) const
    {
        if (auto id = SweId::parse(text); id && text.starts_with("SWE-"))
            return *id;
        fail(std::string("field '") + key + "' is not a SWE id: '" + text + "'");
    }

private:
    const ordered_json& obj_;
    std::size_t line_;
};

constexpr std::array<std::string_view, 12> known_fields{"id", "name", "aliases", "blockchains",
    "source_languages", "status", "detectability", "cross_refs", "default_severity", "description",
    "elimination_reason", "cross_ref_target"};

RegistryEntry read_entry(const ordered_json& obj, std::size_t line)
{
    const EntryReader r(obj, line);
    if (!obj.is_object())
        r.fail("registry entries must be objects");
    for (const auto& [key, value] : obj.items())
        if (std::find(known_fields.begin(), known_fields.end(), key) == known_fields.end())
            r.fail("unknown field '" + key + "'");

    RegistryEntry e;
    e.id = r.sweid(r.string_field("id", true), "id");
    e.name = r.string_field("name", false);
    e.aliases = r.string_list("aliases");
    for (const auto& b : r.string_list("blockchains"))
        e.blockchains.insert(r.enum_value(blockchain_names, b, "blockchain"));
    for (const auto& l : r.string_list("source_languages"))
        e.source_languages.insert(r.enum_value(language_names, l, "source language"));
    e.status = r.enum_value(status_names, r.string_field("status", true), "status");
    if (r.field("detectability") != nullptr)
        e.detectability = r.enum_value(detectability_names, r.string_field("detectability", true), "detectability");
    e.cross_refs = r.string_list("cross_refs");
    if (r.field("default_severity") != nullptr)
    {
        const auto text = r.string_field("default_severity", true);
        e.default_severity = parse_severity(text);
        if (!e.default_severity || to_lower(text) != text)
            r.fail("unknown severity '" + text + "'");
    }
    e.description = r.string_field("description", false);
    if (r.field("elimination_reason") != nullptr)
        e.elimination_reason = r.string_field("elimination_reason", true);
    if (const auto* target = r.field("cross_ref_target"))
    {
        if (target->is_string())
            e.cross_ref_target.push_back(r.sweid(target->get<std::string>(), "cross_ref_target"));
        else
            for (const auto& t : r.string_list("cross_ref_target"))
                e.cross_ref_target.push_back(r.sweid(t, "cross_ref_target"));
    }
    return e;
}

ordered_json write_entry(const RegistryEntry& e)
{
    ordered_json obj;
    obj["id"] = e.id.str();
    if (e.status == Status::reserved)
    {
        obj["status"] = status_names.name(e.status);
        return obj;
    }
    obj["name"] = e.name;
    obj["aliases"] = e.aliases;
    auto chains = ordered_json::array();
    for (const auto b : e.blockchains)
        chains.push_back(blockchain_names.name(b));
    obj["blockchains"] = chains;
    auto langs = ordered_json::array();
    for (const auto l : e.source_languages)
        langs.push_back(language_names.name(l));
    obj["source_languages"] = langs;
    obj["status"] = status_names.name(e.status);
    if (e.detectability)
        obj["detectability"] = detectability_names.name(*e.detectability);
    obj["cross_refs"] = e.cross_refs;
    if (e.default_severity)
        obj["default_severity"] = to_string(*e.default_severity);
    obj["description"] = e.description;
    if (e.elimination_reason)
        obj["elimination_reason"] = *e.elimination_reason;
    if (e.cross_ref_target.size() == 1)
        obj["cross_ref_target"] = e.cross_ref_target.front().str();
    else if (!e.cross_ref_target.empty())
    {
        auto targets = ordered_json::array();
        for (const auto& t : e.cross_ref_target)
            targets.push_back(t.str());
        obj["cross_ref_target"] = targets;
    }
    return obj;
}

std::optional<int> parse_bare_number(std::string_view text)
{
    if (text.empty() || text.front() == '0')
        return std::nullopt;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        return std::nullopt;
    return value;
}
}  // namespace

std::string_view to_string(Blockchain v) noexcept { return blockchain_names.name(v); }
std::string_view to_string(SourceLanguage v) noexcept { return language_names.name(v); }
std::string_view to_string(Status v) noexcept { return status_names.name(v); }
std::string_view to_string(Detectability v) noexcept { return detectability_names.name(v); }

Blockchain parse_blockchain(std::string_view text) { return parse_enum(blockchain_names, text, "blockchain"); }
SourceLanguage parse_language(std::string_view text) { return parse_enum(language_names, text, "language"); }
Status parse_status(std::string_view text) { return parse_enum(status_names, text, "status"); }
Detectability parse_detectability(std::string_view text)
{
    return parse_enum(detectability_names, text, "detectability");
}

Registry::Registry(std::vector<RegistryEntry> entries) : entries_(std::move(entries))
{
    std::stable_sort(entries_.begin(), entries_.end(),
        [](const RegistryEntry& a, const RegistryEntry& b) { return a.id < b.id; });
}

const RegistryEntry* Registry::find(SweId id) const noexcept
{
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
        [](const RegistryEntry& e, SweId key) { return e.id < key; });
    return (it != entries_.end() && it->id == id) ? &*it : nullptr;
}

namespace
{
std::string join_violations(const std::vector<Violation>& violations)
{
    std::string msg = "registry validation failed:";
    for (const auto& v : violations)
        msg += "\n  " + v.id.str() + " [" + v.invariant + "] " + v.message;
    return msg;
}
}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
  : std::runtime_error(join_violations(violations)), violations_(std::move(violations))
{}

Registry load_registry(std::string_view text)
{
    ordered_json doc;
    try
    {
        doc = ordered_json::parse(text.begin(), text.end());
    }
    catch (const nlohmann::json::parse_error& err)
    {
        const auto line = line_of_offset(text, err.byte == 0 ? 0 : err.byte - 1);
        throw LoadError("line " + std::to_string(line) + ": malformed registry file: " + err.what(), line);
    }
    if (!doc.is_array())
        throw LoadError("line 1: registry file must be a list of entries", 1);

    const auto offsets = element_offsets(text);
    std::vector<RegistryEntry> entries;
    entries.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i)
    {
        const auto line = i < offsets.size() ? line_of_offset(text, offsets[i]) : 0;
        entries.push_back(read_entry(doc[i], line));
    }

    Registry registry(std::move(entries));
    if (auto violations = validate_registry(registry); !violations.empty())
        throw ValidationError(std::move(violations));
    return registry;
}

const Registry& bundled_registry()
{
    static const Registry registry = load_registry(bundled_registry_text());
    return registry;
}

std::string serialize_registry(const Registry& registry)
{
    auto doc = ordered_json::array();
    for (const auto& e : registry.entries())
        doc.push_back(write_entry(e));
    return doc.dump(2) + "\n";
}

std::vector<Violation> validate_registry(const Registry& registry)
{
    std::vector<Violation> out;
    const auto add = [&out](SweId id, std::string invariant, std::string message) {
        out.push_back({id, std::move(invariant), std::move(message)});
    };

    const auto& entries = registry.entries();
    std::map<std::string, SweId> canonical_names;
    for (const auto& e : entries)
        if (!e.name.empty())
            canonical_names.emplace(normalize_key(e.name), e.id);

    std::map<std::string, SweId> alias_owner;
    for (std::size_t i = 0; i < entries.size(); ++i)
    {
        const auto& e = entries[i];
        if (e.id.number < 100)
            add(e.id, "id-range", "ids start at 100");
        if (i > 0 && entries[i - 1].id == e.id)
            add(e.id, "unique-id", "duplicate id " + e.id.str());

        if (e.status == Status::reserved)
        {
            const bool empty = e.name.empty() && e.aliases.empty() && e.blockchains.empty() &&
                               e.source_languages.empty() && !e.detectability && e.cross_refs.empty() &&
                               !e.default_severity && e.description.empty() && !e.elimination_reason &&
                               e.cross_ref_target.empty();
            if (!empty)
                add(e.id, "reserved-empty", "reserved entries carry no descriptive fields");
            continue;
        }

        if (e.name.empty() || e.description.empty() || e.blockchains.empty() || e.source_languages.empty() ||
            !e.detectability || !e.default_severity)
            add(e.id, "required-fields",
                "name, description, blockchains, source_languages, detectability and default_severity are required");

        if (e.status == Status::eliminated)
        {
            if (e.detectability != Detectability::manual)
                add(e.id, "eliminated-detectability", "eliminated entries must have detectability=manual");
            if (!e.elimination_reason || trim(*e.elimination_reason).empty())
                add(e.id, "eliminated-reason", "eliminated entries need an elimination_reason");
            if (e.id.number < first_eliminated_id)
                add(e.id, "eliminated-block", "eliminated entries live at SWE-900 and above");
        }
        else if (e.elimination_reason)
            add(e.id, "eliminated-reason", "elimination_reason is only allowed on eliminated entries");

        const bool is_cross_ref = e.detectability == Detectability::cross_ref;
        if (is_cross_ref && e.cross_ref_target.empty())
            add(e.id, "cross-ref-target", "detectability=cross-ref requires cross_ref_target");
        if (!is_cross_ref && !e.cross_ref_target.empty())
            add(e.id, "cross-ref-target", "cross_ref_target requires detectability=cross-ref");
        for (const auto& target : e.cross_ref_target)
        {
            const auto* t = registry.find(target);
            if (t == nullptr || t->status != Status::active)
                add(e.id, "cross-ref-target", "cross_ref_target " + target.str() + " is not an active entry");
        }

        for (const auto& alias : e.aliases)
        {
            const auto key = normalize_key(alias);
            if (key != alias)
                add(e.id, "alias-normalized", "alias '" + alias + "' must be lowercase with single spaces");
            if (const auto it = canonical_names.find(key); it != canonical_names.end())
                add(e.id, "alias-unique", "alias '" + alias + "' equals the name of " + it->second.str());
            if (const auto [it, inserted] = alias_owner.emplace(key, e.id); !inserted)
                add(e.id, "alias-unique", "alias '" + alias + "' already used by " + it->second.str());
        }
    }

    const auto expect_status = [&](int number, Status status, const char* invariant) {
        const auto* e = registry.find(SweId{number});
        if (e == nullptr || e->status != status)
            add(SweId{number}, invariant,
                SweId{number}.str() + " must be present with status " + std::string(to_string(status)));
    };
    const auto active_ids = expected_active_ids();
    for (const int n : active_ids)
        expect_status(n, Status::active, "active-set");
    for (const int n : expected_reserved_ids)
        expect_status(n, Status::reserved, "reserved-set");

    std::size_t eliminated = 0;
    for (const auto& e : entries)
    {
        if (e.status == Status::eliminated)
            ++eliminated;
        else if (e.status == Status::active &&
                 std::find(active_ids.begin(), active_ids.end(), e.id.number) == active_ids.end())
            add(e.id, "active-set", e.id.str() + " is not part of the active numbering");
        else if (e.status == Status::reserved &&
                 std::find(expected_reserved_ids.begin(), expected_reserved_ids.end(), e.id.number) ==
                     expected_reserved_ids.end())
            add(e.id, "reserved-set", e.id.str() + " is not a reserved gap");
    }
    if (eliminated != expected_eliminated)
        add(SweId{first_eliminated_id}, "eliminated-count",
            "expected " + std::to_string(expected_eliminated) + " eliminated entries, found " +
                std::to_string(eliminated));
    return out;
}

const RegistryEntry& lookup_entry(const Registry& registry, std::string_view key)
{
    const auto norm = normalize_key(key);
    std::optional<int> number;
    if (norm.starts_with("swe-"))
    {
        if (auto id = SweId::parse(norm))
            number = id->number;
    }
    else
        number = parse_bare_number(norm);

    if (number)
    {
        const auto* e = registry.find(SweId{*number});
        if (e == nullptr)
            throw NotFoundError("no registry entry for '" + std::string(key) + "'");
        if (e->status == Status::reserved)
            throw ReservedIdError(e->id.str() + " is a reserved number with no entry");
        return *e;
    }

    for (const auto& e : registry.entries())
    {
        if (e.status == Status::reserved)
            continue;
        if (normalize_key(e.name) == norm)
            return e;
        for (const auto& alias : e.aliases)
            if (normalize_key(alias) == norm)
                return e;
    }
    throw NotFoundError("no registry entry for '" + std::string(key) + "'");
}

std::vector<const RegistryEntry*> list_entries(const Registry& registry, const EntryFilter& filter)
{
    std::vector<const RegistryEntry*> out;
    for (const auto& e : registry.entries())
    {
        if (filter.status && e.status != *filter.status)
            continue;
        if (filter.blockchain && !e.blockchains.contains(*filter.blockchain))
            continue;
        if (filter.language && !e.source_languages.contains(*filter.language))
            continue;
        if (filter.detectability && e.detectability != filter.detectability)
            continue;
        out.push_back(&e);
    }
    return out;
}
}  // namespace swelint::registry
