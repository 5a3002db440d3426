#include "doctest.h"

#include "swelint/lexer.hpp"
#include "swelint/parser.hpp"

#include <algorithm>

using namespace swelint::sol;

TEST_CASE("lexer classifies tokens and tracks positions")
{
    const auto toks = tokenize("uint x = 0x12 + 1 ether; // note\naddress a = 0x5B38Da6a701c568545dCfcB03FcB875f56beddC4;");
    REQUIRE(toks.size() > 5);
    CHECK(toks[0].kind == TokenKind::identifier);
    CHECK(toks[1].kind == TokenKind::identifier);
    CHECK(toks[3].kind == TokenKind::integer_literal);
    CHECK(tokenize("contract")[0].kind == TokenKind::keyword);
    const auto comment = std::find_if(toks.begin(), toks.end(), [](const Token& t) { return t.kind == TokenKind::comment; });
    REQUIRE(comment != toks.end());
    CHECK(comment->span.line == 1);
    const auto addr = std::find_if(toks.begin(), toks.end(), [](const Token& t) { return t.kind == TokenKind::address_literal; });
    REQUIRE(addr != toks.end());
    CHECK(addr->span.line == 2);
    CHECK(addr->span.column == 13);
    CHECK(toks.back().kind == TokenKind::end);
}

TEST_CASE("reprint restores the source")
{
    const std::string src = "pragma solidity ^0.8.0;\n/* c */ contract A { function f() public {} }\n";
    CHECK(reprint(tokenize(src)) == src);
}

TEST_CASE("unterminated constructs become diagnostics")
{
    const auto toks = tokenize("string s = \"open\n");
    CHECK(std::any_of(toks.begin(), toks.end(), [](const Token& t) { return t.kind == TokenKind::diagnostic; }));
}

TEST_CASE("parser builds contracts, functions and state variables")
{
    const auto unit = parse_source(R"(pragma solidity ^0.8.0;
import "./Lib.sol";
interface I { function f(uint256 a) external returns (bool); }
abstract contract Base {
    uint256 internal total;
    mapping(address => uint256[]) public balances;
    event Moved(address indexed who, uint256 amount);
    modifier only() { _; }
    function g(address payable to, bytes calldata data) public virtual only returns (uint256);
}
contract Impl is Base, I {
    function f(uint256 a) external override returns (bool) { total += a; return true; }
    function g(address payable to, bytes calldata) public override only returns (uint256) { return total; }
    receive() external payable {}
}
function free(uint x) pure returns (uint) { return x; }
)", "t.sol");
    CHECK(unit.parse_diagnostics.empty());
    REQUIRE(unit.pragmas.size() == 1);
    CHECK(unit.imports.size() == 1);
    REQUIRE(unit.contracts.size() == 3);
    CHECK(unit.contracts[0].kind == ContractKind::interface);
    CHECK(unit.contracts[1].is_abstract);
    CHECK(unit.contracts[1].state_vars.size() == 2);
    CHECK(unit.contracts[1].events.size() == 1);
    CHECK(unit.contracts[1].modifiers.size() == 1);
    const auto& impl = unit.contracts[2];
    CHECK(impl.bases.size() == 2);
    REQUIRE(impl.find_function("g") != nullptr);
    CHECK(canonical_signature(*impl.find_function("g")) == "g(address,bytes)");
    CHECK(std::any_of(impl.functions.begin(), impl.functions.end(),
        [](const FunctionDef& f) { return f.kind == FunctionKind::receive; }));
    CHECK(unit.file_scope.find_function("free") != nullptr);
}

TEST_CASE("parser recovers after a malformed member")
{
    const auto unit = parse_source("contract A { function broken( { } function ok() public {} }\ncontract B {}", "r.sol");
    CHECK_FALSE(unit.parse_diagnostics.empty());
    CHECK(std::any_of(unit.contracts.begin(), unit.contracts.end(), [](const ContractDef& c) { return c.name == "B"; }));
}

TEST_CASE("legacy syntax parses")
{
    const auto unit = parse_source(R"(pragma solidity ^0.4.11;
contract Old {
    address owner;
    function Old() { owner = msg.sender; }
    function () payable {}
    function kill() { if (msg.sender != owner) throw; suicide(owner); }
}
)", "old.sol");
    CHECK(unit.parse_diagnostics.empty());
    REQUIRE(unit.contracts.size() == 1);
    CHECK(unit.contracts[0].functions.size() == 3);
}
