#include "doctest.h"

#include "swelint/pragma.hpp"
#include "swelint/rule.hpp"

using namespace swelint;
using namespace swelint::sol;

namespace
{
Version v(std::string_view text)
{
    return *Version::parse(text);
}
}  // namespace

TEST_CASE("caret, tilde and exact constraints")
{
    const auto caret = parse_version_constraint("^0.4.19");
    CHECK(caret.diagnostic.empty());
    CHECK(caret.floating);
    CHECK(caret.admissible.contains(v("0.4.19")));
    CHECK(caret.admissible.contains(v("0.4.26")));
    CHECK_FALSE(caret.admissible.contains(v("0.5.0")));
    CHECK_FALSE(caret.admissible.contains(v("0.4.18")));

    const auto tilde = parse_version_constraint("~0.5.2");
    CHECK(tilde.admissible.contains(v("0.5.9")));
    CHECK_FALSE(tilde.admissible.contains(v("0.6.0")));

    const auto exact = parse_version_constraint("0.8.0");
    CHECK_FALSE(exact.floating);
    CHECK(exact.admissible == VersionSet::range(v("0.8.0"), v("0.8.1")));
}

TEST_CASE("ranges, disjunctions and wildcards")
{
    const auto range = parse_version_constraint(">=0.4.22 <0.6.0");
    CHECK(range.floating);
    CHECK(range.admissible.contains(v("0.5.17")));
    CHECK_FALSE(range.admissible.contains(v("0.6.0")));

    const auto either = parse_version_constraint("^0.4.24 || ^0.5.0");
    CHECK(either.admissible.contains(v("0.4.25")));
    CHECK(either.admissible.contains(v("0.5.3")));
    CHECK_FALSE(either.admissible.contains(v("0.6.0")));

    const auto hyphen = parse_version_constraint("0.4.0 - 0.4.9");
    CHECK(hyphen.admissible.contains(v("0.4.9")));
    CHECK_FALSE(hyphen.admissible.contains(v("0.4.10")));

    const auto wildcard = parse_version_constraint("0.4.x");
    CHECK(wildcard.floating);
    CHECK(wildcard.admissible.contains(v("0.4.7")));
}

TEST_CASE("malformed constraints carry a diagnostic")
{
    CHECK_FALSE(parse_version_constraint("^banana").diagnostic.empty());
    CHECK_FALSE(parse_pragma("pragma solidity ;").diagnostic.empty());
}

TEST_CASE("parse_pragma reads the directive")
{
    const auto p = parse_pragma("pragma solidity ^0.4.19;");
    CHECK(p.text == "^0.4.19");
    CHECK(p.admissible.admits_below(v("0.5.0")));
    CHECK_FALSE(parse_pragma("pragma solidity 0.8.0;").admissible.admits_below(v("0.8.0")));
}

TEST_CASE("version set algebra")
{
    const auto a = VersionSet::range(v("0.4.0"), v("0.5.0"));
    const auto b = VersionSet::range(v("0.4.20"), v("0.6.0"));
    CHECK(a.intersect(b) == VersionSet::range(v("0.4.20"), v("0.5.0")));
    CHECK(a.unite(b) == VersionSet::range(v("0.4.0"), v("0.6.0")));
    CHECK(a.intersect(VersionSet::range(v("0.7.0"), v("0.8.0"))).empty());
    CHECK(*b.lower_bound() == v("0.4.20"));
}

TEST_CASE("applicability kinds")
{
    const auto old = parse_version_constraint("^0.4.19").admissible;
    const auto pinned = parse_version_constraint("0.8.0").admissible;
    CHECK(Applicability::always().evaluate(pinned));
    CHECK(Applicability::admits_below(v("0.8.0")).evaluate(old));
    CHECK_FALSE(Applicability::admits_below(v("0.8.0")).evaluate(pinned));
    CHECK(Applicability::admits(v("0.4.22")).evaluate(parse_version_constraint(">=0.4.0").admissible));
    CHECK_FALSE(Applicability::admits(v("0.4.22")).evaluate(pinned));

    DetectorRule rule;
    rule.applicability = Applicability::admits_below(v("0.8.0"));
    CHECK(applicable(rule, std::vector<PragmaConstraint>{}));
    CHECK_FALSE(applicable(rule, std::vector{parse_pragma("pragma solidity 0.8.0;")}));
    CHECK(applicable(rule, std::vector{parse_pragma("pragma solidity >=0.4.0;"),
                               parse_pragma("pragma solidity <0.6.0;")}));
}
