// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

#include "swelint/rule.hpp"

namespace swelint
{
std::string_view to_string(Language l) noexcept
{
    return l == Language::solidity ? "solidity" : "go-chaincode";
}

bool Applicability::evaluate(const sol::VersionSet& admissible) const noexcept
{
    switch (kind)
    {
    case Kind::always:
        return true;
    case Kind::admits_below:
        return admissible.admits_below(version);
    case Kind::admits:
        return admissible.contains(version);
    }
    return true;
}

std::string Applicability::describe() const
{
    switch (kind)
    {
    case Kind::always:
        return "always";
    case Kind::admits_below:
        return "admits < " + version.str();
    case Kind::admits:
        return "admits " + version.str();
    }
    return "always";
}

bool applicable(const DetectorRule& rule, const sol::PragmaConstraint* pragma) noexcept
{
    if (pragma == nullptr || !pragma->diagnostic.empty())
        return true;
    return rule.applicability.evaluate(pragma->admissible);
}

bool applicable(const DetectorRule& rule, const std::vector<sol::PragmaConstraint>& pragmas)
{
    if (rule.applicability.kind == Applicability::Kind::always || pragmas.empty())
        return true;
    auto admissible = sol::VersionSet::all();
    for (const auto& p : pragmas)
        if (p.diagnostic.empty())
            admissible = admissible.intersect(p.admissible);
    if (admissible.empty())
        return true;
    return rule.applicability.evaluate(admissible);
}
}  // namespace swelint
