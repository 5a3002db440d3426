#include "doctest.h"

#include "swelint/registry.hpp"

#include <algorithm>
#include <set>

using namespace swelint;
using namespace swelint::registry;

namespace
{
std::set<int> ids_with(Status status)
{
    std::set<int> out;
    EntryFilter filter;
    filter.status = status;
    for (const auto* e : list_entries(bundled_registry(), filter))
        out.insert(e->id.number);
    return out;
}
}  // namespace

TEST_CASE("bundled registry validates and has the expected population")
{
    const auto& reg = bundled_registry();
    CHECK(validate_registry(reg).empty());
    CHECK(reg.entries().size() == 88);

    std::set<int> active;
    for (int id = 100; id <= 176; ++id)
        active.insert(id);
    for (const int gap : {105, 106, 108, 130, 131})
        active.erase(gap);
    CHECK(ids_with(Status::active) == active);
    CHECK(ids_with(Status::reserved) == std::set<int>{105, 106, 108, 130, 131});
    CHECK(ids_with(Status::eliminated).size() == 11);
}

TEST_CASE("lookup accepts ids, bare numbers, names and aliases")
{
    const auto& reg = bundled_registry();
    CHECK(lookup_entry(reg, "SWE-116").id.number == 116);
    CHECK(lookup_entry(reg, "swe-116").id.number == 116);
    CHECK(lookup_entry(reg, "116").id.number == 116);
    CHECK(lookup_entry(reg, "time manipulation").id.number == 116);
    CHECK(lookup_entry(reg, "  Time   Manipulation ").id.number == 116);
    CHECK(lookup_entry(reg, lookup_entry(reg, "SWE-107").name).id.number == 107);
}

TEST_CASE("lookup errors distinguish reserved from unknown")
{
    const auto& reg = bundled_registry();
    CHECK_THROWS_AS(lookup_entry(reg, "SWE-105"), ReservedIdError);
    CHECK_THROWS_AS(lookup_entry(reg, "SWE-999"), NotFoundError);
    CHECK_THROWS_AS(lookup_entry(reg, "no such weakness"), NotFoundError);
}

TEST_CASE("filters combine")
{
    const auto& reg = bundled_registry();
    EntryFilter filter;
    filter.blockchain = Blockchain::hyperledger_fabric;
    filter.status = Status::active;
    const auto fabric = list_entries(reg, filter);
    CHECK_FALSE(fabric.empty());
    CHECK(std::all_of(fabric.begin(), fabric.end(), [](const RegistryEntry* e) {
        return e->blockchains.contains(Blockchain::hyperledger_fabric) && e->status == Status::active;
    }));
    const auto all = list_entries(reg, {});
    CHECK(std::is_sorted(all.begin(), all.end(),
        [](const RegistryEntry* a, const RegistryEntry* b) { return a->id < b->id; }));
}

TEST_CASE("serialization round-trips")
{
    const auto& reg = bundled_registry();
    const auto text = serialize_registry(reg);
    CHECK(load_registry(text) == reg);
    CHECK(serialize_registry(load_registry(text)) == text);
}

TEST_CASE("load errors carry a line number")
{
    try
    {
        (void)load_registry("[\n  {\"id\": \"SWE-100\",\n  oops\n]");
        FAIL("expected LoadError");
    }
    catch (const LoadError& e)
    {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("validation reports every violated invariant")
{
    auto entries = bundled_registry().entries();
    auto& reserved = *std::find_if(entries.begin(), entries.end(),
        [](const RegistryEntry& e) { return e.status == Status::reserved; });
    reserved.name = "should be empty";
    auto& active = *std::find_if(entries.begin(), entries.end(),
        [](const RegistryEntry& e) { return e.status == Status::active; });
    active.detectability.reset();
    const auto violations = validate_registry(Registry(entries));
    CHECK(violations.size() >= 2);
    std::vector<RegistryEntry> dup{entries.front(), entries.front()};
    CHECK_FALSE(validate_registry(Registry(dup)).empty());
    CHECK_THROWS_AS(load_registry(serialize_registry(Registry(entries))), ValidationError);
}
