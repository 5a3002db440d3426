#include "doctest.h"

#include "swelint/parser.hpp"
#include "swelint/symbols.hpp"

#include <algorithm>

using namespace swelint::sol;

namespace
{
std::vector<std::string> names(const std::vector<const ContractDef*>& chain)
{
    std::vector<std::string> out;
    for (const auto* c : chain)
        out.push_back(c->name);
    return out;
}
}  // namespace

TEST_CASE("C3 linearization of a diamond")
{
    const auto unit = parse_source(R"(
contract A { function f() public virtual {} }
contract B is A { function f() public virtual override {} }
contract C is A { function f() public virtual override {} }
contract D is B, C { function f() public override(B, C) {} }
)", "d.sol");
    const auto table = resolve(unit, {&unit});
    CHECK(table.diagnostics.empty());
    REQUIRE(table.find("D") != nullptr);
    CHECK(names(table.find("D")->linearization) == std::vector<std::string>{"D", "C", "B", "A"});
    CHECK(names(table.find("B")->linearization) == std::vector<std::string>{"B", "A"});
    CHECK(table.find("D")->inherited_declarations("f()").size() == 3);
}

TEST_CASE("inconsistent hierarchies are reported")
{
    const auto unit = parse_source(R"(
contract X {}
contract Y is X {}
contract Z is Y, X {}
)", "bad.sol");
    const auto table = resolve(unit, {&unit});
    CHECK_FALSE(table.diagnostics.empty());
}

TEST_CASE("state variables, functions and the external interface")
{
    const auto unit = parse_source(R"(
contract Base {
    uint256 public price;
    mapping(address => mapping(uint256 => bool)) public seen;
    function hidden() internal {}
}
contract Child is Base {
    uint256 public price;
    function pay(address to, uint256[] calldata amounts) external {}
}
)", "s.sol");
    const auto table = resolve(unit, {&unit});
    const auto* child = table.find("Child");
    REQUIRE(child != nullptr);
    CHECK(child->find_state_var("seen") != nullptr);
    CHECK(child->functions.contains("hidden()"));
    std::vector<std::string> sigs;
    for (const auto& e : child->interface)
        sigs.push_back(e.signature);
    std::sort(sigs.begin(), sigs.end());
    CHECK(sigs == std::vector<std::string>{"pay(address,uint256[])", "price()", "seen(address,uint256)"});
    REQUIRE(table.shadowing.size() == 1);
    CHECK(table.shadowing.front().derived->name == "price");
}

TEST_CASE("contracts resolve across files")
{
    const auto lib = parse_source("contract Token { function transfer(address to, uint256 v) public returns (bool) {} }", "token.sol");
    const auto app = parse_source("import \"./token.sol\";\ncontract Wallet is Token {}", "wallet.sol");
    const auto table = resolve(app, {&lib, &app});
    REQUIRE(table.find("Wallet") != nullptr);
    CHECK(names(table.find("Wallet")->linearization) == std::vector<std::string>{"Wallet", "Token"});
}
