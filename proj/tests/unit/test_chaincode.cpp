#include "doctest.h"

#include "../support/expectations.hpp"
#include "../support/support.hpp"

#include "swelint/chaincode.hpp"

#include <filesystem>

using namespace swelint;
using namespace swelint::test;

namespace
{
std::size_t count_rule(std::string_view source, int rule, const chaincode::ChaincodeOptions& opts = {})
{
    const auto file = chaincode::parse_chaincode(source, "c.go");
    std::vector<RawFinding> out;
    for (const auto& r : chaincode::chaincode_rules())
        if (r.meta.id.number == rule)
            r.check(file, opts, out);
    return out.size();
}
}  // namespace

TEST_CASE("chaincode rules are catalogued")
{
    CHECK(chaincode::chaincode_rules().size() == 14);
    for (const auto& r : chaincode::chaincode_rules())
        CHECK(r.meta.language == Language::go_chaincode);
}

TEST_CASE("Go lexing keeps imports, functions and package variables")
{
    const auto f = chaincode::parse_chaincode(R"(package main

import (
	"fmt"
	pb "github.com/hyperledger/fabric-protos-go/peer"
)

var total int
var registry = map[string]int{}

type Asset struct {
	Owner string
	Value int
}

func (a *Asset) Invoke() { fmt.Println(`raw
string`) }
)", "x.go");
    REQUIRE(f.imports.size() == 2);
    CHECK(f.imports[1].path == "github.com/hyperledger/fabric-protos-go/peer");
    REQUIRE(f.func_regions.size() == 1);
    CHECK(f.func_regions[0].construct() == "Asset.Invoke");
    CHECK(f.package_level_vars.size() == 2);
    CHECK(f.map_typed_names.contains("registry"));
    REQUIRE(f.structs.size() == 1);
    CHECK(f.structs[0].fields.size() == 2);
}

TEST_CASE("transcribed chaincode examples and fixtures")
{
    const auto report = scan_corpus(chaincode_golden_files());
    for (const auto& e : chaincode_expectations)
    {
        INFO(e.file);
        CHECK(count_findings(report, e.file, e.rule) >= e.count);
    }
    for (const auto& file : list_corpus("chaincode/positive", ".go"))
    {
        INFO(file);
        CHECK(count_findings(report, file, std::stoi(std::filesystem::path(file).stem().string().substr(3))) >= 1);
    }
    for (const auto& f : report.findings)
        CHECK_MESSAGE(f.path.find("clean/") == std::string::npos, f.path, " ", f.rule.str());
    const auto golden = compare_golden("chaincode.json", render_json(report));
    INFO(golden.detail);
    CHECK(golden.ok);
}

TEST_CASE("pointer verbs only count in format strings")
{
    CHECK(count_rule("package main\nfunc f(a *int) string { return fmt.Sprintf(\"%p\", a) }", 164) == 1);
    CHECK(count_rule("package main\nfunc f() string { return strings.ToUpper(\"%p\") }", 164) == 0);
    CHECK(count_rule("package main\nfunc f() string { return fmt.Sprintf(\"100%%p\") }", 164) == 0);
}

TEST_CASE("global writes ignore shadowing locals")
{
    CHECK(count_rule("package main\nvar n int\nfunc f() { n = 1 }", 162) == 1);
    CHECK(count_rule("package main\nvar n int\nfunc f() { n := 2; n = 3 }", 162) == 0);
}

TEST_CASE("cross-channel invocation needs a named channel")
{
    CHECK(count_rule("package main\nfunc f(s Stub) { s.InvokeChaincode(\"cc\", nil, \"ch\") }", 174) == 1);
    CHECK(count_rule("package main\nfunc f(s Stub) { s.InvokeChaincode(\"cc\", nil, \"\") }", 174) == 0);
}

TEST_CASE("allowlist patterns")
{
    const auto list = chaincode::ChaincodeOptions::default_allowlist();
    CHECK(chaincode::import_allowed("encoding/json", list));
    CHECK(chaincode::import_allowed("math/big", list));
    CHECK_FALSE(chaincode::import_allowed("math/rand", list));
    CHECK_FALSE(chaincode::import_allowed("net/http", list));
    const auto custom = chaincode::load_allowlist(R"(["net/http"])");
    CHECK(chaincode::import_allowed("net/http", custom));
    CHECK(count_rule("package main\nimport \"net/http\"\n", 171, {custom}) == 0);
}
