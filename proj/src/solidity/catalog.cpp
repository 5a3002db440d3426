// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

#include "checks.hpp"

#include "json.hpp"

#include <algorithm>
#include <stdexcept>

namespace swelint::rules
{
namespace
{
using S = Severity;
using C = Confidence;
using A = Applicability;

SolidityRule rule(int id, std::string name, std::string trigger, A applicability, S sev, C conf, FileCheck check)
{
    return {DetectorRule{SweId{id}, std::move(name), std::move(trigger), applicability, sev, conf, Language::solidity},
        check, nullptr};
}

SolidityRule program_rule(int id, std::string name, std::string trigger, S sev, C conf, ProgramCheck check)
{
    return {DetectorRule{SweId{id}, std::move(name), std::move(trigger), A::always(), sev, conf, Language::solidity},
        nullptr, check};
}

constexpr sol::Version v(int major, int minor, int patch)
{
    return {major, minor, patch};
}
}  // namespace

std::vector<std::string> default_secret_names()
{
    return {"secret", "password", "key", "seed", "salt"};
}

std::vector<Advisory> load_advisories(std::string_view json_text)
{
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(json_text);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw UsageError(std::string("advisories: ") + e.what());
    }
    if (!doc.is_array())
        throw UsageError("advisories: expected a JSON array");
    auto text = [](const nlohmann::json& item, const char* key, bool required) {
        if (!item.contains(key))
        {
            if (required)
                throw UsageError(std::string("advisories: entry without '") + key + "'");
            return std::string{};
        }
        if (!item.at(key).is_string())
            throw UsageError(std::string("advisories: '") + key + "' must be a string");
        return item.at(key).get<std::string>();
    };
    std::vector<Advisory> out;
    for (const auto& item : doc)
    {
        if (!item.is_object())
            throw UsageError("advisories: entries must be objects");
        Advisory a;
        a.import_path_pattern = text(item, "import_path_pattern", true);
        a.id = text(item, "id", true);
        a.affected = text(item, "affected", false);
        a.description = text(item, "description", false);
        if (!a.affected.empty())
        {
            const auto c = sol::parse_version_constraint(a.affected);
            if (!c.diagnostic.empty())
                throw UsageError("advisory " + a.id + ": " + c.diagnostic);
            a.affected_set = c.admissible;
        }
        if (item.contains("severity"))
        {
            const auto s = parse_severity(text(item, "severity", true));
            if (!s)
                throw UsageError("advisory " + a.id + ": unknown severity");
            a.severity = *s;
        }
        out.push_back(std::move(a));
    }
    return out;
}

const std::vector<SolidityRule>& solidity_rules()
{
    static const std::vector<SolidityRule> rules{
        rule(100, "Function or state variable default visibility", "function or state variable without visibility",
            A::admits_below(v(0, 5, 0)), S::medium, C::high, check_100),
        rule(101, "Integer Overflow and Underflow", "unchecked integer arithmetic or compound assignment",
            A::admits_below(v(0, 8, 0)), S::high, C::medium, check_101),
        rule(102, "Outdated Compiler Version", "pragma admits a version below the configured minimum", A::always(),
            S::info, C::high, check_102),
        rule(103, "Floating compiler version", "pragma admits more than one version", A::always(), S::info, C::high,
            check_103),
        rule(104, "Unchecked Call Return Value", "low-level call used as a statement", A::always(), S::high, C::high,
            check_104),
        rule(107, "Reentrancy", "gas-forwarding call followed by a storage write", A::always(), S::high, C::medium,
            check_107),
        rule(109, "Uninitialized Storage Pointer", "local struct or array declared without location or value",
            A::admits_below(v(0, 5, 0)), S::high, C::high, check_109),
        rule(110, "Assert Violation", "assert on a parameter or msg member", A::always(), S::low, C::medium,
            check_110),
        rule(111, "Use of Deprecated Solidity Functions", "deprecated identifier or construct", A::always(), S::info,
            C::high, check_111),
        rule(112, "Delegatecall to Untrusted Callee", "delegatecall target from a parameter or mutable storage",
            A::always(), S::high, C::medium, check_112),
        rule(113, "DoS with Failed Call", "ether send inside a loop", A::always(), S::medium, C::high, check_113),
        rule(114, "Transaction Order Dependence", "ether send guarded by parameter equality with storage",
            A::always(), S::medium, C::low, check_114),
        rule(115, "Authorization through tx.origin", "tx.origin compared in a condition", A::always(), S::high,
            C::high, check_115),
        rule(116, "Block values as a proxy for time", "block value in a comparison or branch condition", A::always(),
            S::low, C::medium, check_116),
        rule(117, "Signature Malleability", "ecrecover with an unconstrained s value", A::always(), S::medium,
            C::low, check_117),
        rule(118, "Incorrect Constructor Name", "function named like the contract in different case",
            A::admits_below(v(0, 4, 22)), S::high, C::high, check_118),
        rule(119, "Shadowing State Variables", "declaration hides a state variable", A::always(), S::medium,
            C::high, check_119),
        rule(120, "Weak Sources of Randomness from Chain Attributes", "block attribute in modulo or hash input",
            A::always(), S::high, C::medium, check_120),
        rule(121, "Missing Protection against Signature Replay Attacks", "ecrecover without a hash-keyed storage write",
            A::always(), S::medium, C::low, check_121),
        program_rule(123, "Requirement violation by the called smart contract",
            "literal argument that fails the callee's leading require", S::medium, C::high, check_123),
        rule(124, "Write to Arbitrary Storage Location", "storage array write at an unchecked parameter index",
            A::always(), S::high, C::low, check_124),
        rule(125, "Incorrect Inheritance Order", "several bases implement the same signature", A::always(), S::info,
            C::medium, check_125),
        rule(126, "Insufficient Gas Griefing", "unchecked low-level call relaying an encoded payload", A::always(),
            S::medium, C::medium, check_126),
        rule(127, "Arbitrary Jump with Function Type Variable", "mstore in assembly next to a function-type variable",
            A::always(), S::high, C::medium, check_127),
        rule(128, "DoS With Block Gas Limit", "loop over a storage array length that writes storage", A::always(),
            S::medium, C::medium, check_128),
        rule(129, "Typographical Error", "=+ or =- operator typo", A::always(), S::high, C::high, check_129),
        rule(132, "Unexpected balance", "strict balance equality or msg.value-only accounting", A::always(),
            S::medium, C::low, check_132),
        rule(133, "Hash collisions with multiple variable length arguments",
            "abi.encodePacked with several dynamic arguments", A::always(), S::high, C::high, check_133),
        rule(134, "Message call with hardcoded gas amount", "gas option set to a literal", A::always(), S::low,
            C::high, check_134),
        rule(135, "Code with no effects", "statement without effect", A::always(), S::medium, C::high, check_135),
        rule(136, "Unencrypted Private Data On-Chain", "non-public state variable with a secret-like name",
            A::always(), S::info, C::low, check_136),
        rule(137, "Access control management", "privileged operation without caller check", A::always(), S::high,
            C::medium, check_137),
        rule(138, "Locked money", "contract receives ether but never sends it", A::always(), S::medium, C::high,
            check_138),
        rule(141, "Dynamic library", "delegatecall target that a public function can replace", A::always(),
            S::medium, C::medium, check_141),
        rule(142, "Type cast", "contract cast of an address parameter or state variable", A::always(), S::info,
            C::low, check_142),
        rule(143, "Call to the unknown", "ether sent to a stored or caller-supplied address", A::always(),
            S::medium, C::low, check_143),
        rule(144, "Assembly-based vulnerabilities", "inline assembly", A::always(), S::info, C::high, check_144),
        rule(146, "double constructor", "constructor keyword plus a function named like the contract",
            A::admits(v(0, 4, 22)), S::high, C::high, check_146),
        rule(148, "improper or missing event handling", "token function changes balances without an event",
            A::always(), S::low, C::medium, check_148),
        rule(150, "Money leak", "literal division in a payment amount", A::always(), S::medium, C::low, check_150),
        rule(151, "Unchecked division", "division by an unchecked variable", A::always(), S::medium, C::medium,
            check_151),
        rule(152, "Token API violation", "token function with a wrong return type or extra restriction", A::always(),
            S::medium, C::medium, check_152),
        rule(153, "Using components with known vulnerabilities", "import matching an advisory", A::always(),
            S::medium, C::high, check_153),
        rule(154, "Built-in symbol shadowing", "declaration named after a built-in", A::always(), S::medium, C::high,
            check_154),
        rule(155, "Hardcoded addresses", "address literal", A::always(), S::low, C::high, check_155),
        rule(156, "Send to zero address", "transfer to an address parameter without a zero check", A::always(),
            S::low, C::medium, check_156),
        rule(157, "Multiple calls in a single transaction", "external call inside a loop", A::always(), S::medium,
            C::medium, check_157),
        program_rule(158, "Function clashing", "two signatures with the same selector", S::high, C::high, check_158),
        rule(160, "Identity verification", "code size used to tell contracts from accounts", A::always(), S::medium,
            C::medium, check_160),
        rule(161, "Array length manipulation", "write to an array length", A::admits_below(v(0, 6, 0)), S::high,
            C::high, check_161),
    };
    return rules;
}

std::vector<DetectorRule> solidity_rule_set()
{
    std::vector<DetectorRule> out;
    for (const auto& r : solidity_rules())
        out.push_back(r.meta);
    return out;
}

SolidityProgram SolidityProgram::build(std::vector<const sol::SourceUnit*> units, SolidityOptions options)
{
    SolidityProgram p;
    p.units = std::move(units);
    p.options = std::move(options);
    p.index = std::make_unique<sol::ContractIndex>(p.units);
    p.symbols.reserve(p.units.size());
    for (const auto* u : p.units)
        p.symbols.push_back(sol::resolve(*u, p.units));
    return p;
}

const sol::SymbolTable* SolidityProgram::symbols_of(const sol::SourceUnit* unit) const noexcept
{
    for (std::size_t i = 0; i < units.size(); ++i)
        if (units[i] == unit)
            return &symbols[i];
    return nullptr;
}

const sol::ContractSymbols* SolidityProgram::symbols_of(const sol::ContractDef* c) const noexcept
{
    for (const auto& table : symbols)
        if (const auto* cs = table.find(c))
            return cs;
    return nullptr;
}

std::vector<RawFinding> run_file_rules(const SolidityProgram& program, std::size_t unit_index, const RuleFilter& filter)
{
    std::vector<RawFinding> out;
    const FileAnalysis fa(program, unit_index);
    for (const auto& r : solidity_rules())
    {
        if (!r.file_check || (filter && !filter(r.meta)))
            continue;
        if (!applicable(r.meta, fa.unit.pragmas))
            continue;
        r.file_check(fa, out);
    }
    return out;
}

std::vector<RawFinding> run_program_rules(const SolidityProgram& program, const RuleFilter& filter)
{
    std::vector<RawFinding> out;
    for (const auto& r : solidity_rules())
        if (r.program_check && (!filter || filter(r.meta)))
            r.program_check(program, out);
    return out;
}
}  // namespace swelint::rules
