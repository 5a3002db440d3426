// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

#include "swelint/pragma.hpp"

#include "swelint/common.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace swelint::sol
{
namespace
{
constexpr Version version_max{1 << 20, 0, 0};

Version next_patch(Version v) { return {v.major, v.minor, v.patch + 1}; }
Version next_minor(Version v) { return {v.major, v.minor + 1, 0}; }
Version next_major(Version v) { return {v.major + 1, 0, 0}; }

Version floor_of(const PartialVersion& p)
{
    return {p.major.value_or(0), p.minor.value_or(0), p.patch.value_or(0)};
}

/// First version above everything the partial version denotes.
Version ceiling_of(const PartialVersion& p)
{
    const auto v = floor_of(p);
    if (!p.major)
        return version_max;
    if (!p.minor)
        return next_major(v);
    if (!p.patch)
        return next_minor(v);
    return next_patch(v);
}

VersionSet clause_set(const PragmaClause& c)
{
    const auto& p = c.version;
    const auto lo = floor_of(p);
    switch (c.comparator)
    {
    case Comparator::exact:
    case Comparator::wildcard:
        return VersionSet::range(lo, ceiling_of(p));
    case Comparator::caret:
        if (!p.major)
            return VersionSet::all();
        if (*p.major > 0 || !p.minor)
            return VersionSet::range(lo, next_major(lo));
        if (*p.minor > 0 || !p.patch)
            return VersionSet::range(lo, next_minor(lo));
        return VersionSet::range(lo, next_patch(lo));
    case Comparator::tilde:
        if (!p.major)
            return VersionSet::all();
        if (!p.minor)
            return VersionSet::range(lo, next_major(lo));
        return VersionSet::range(lo, next_minor(lo));
    case Comparator::ge:
        return VersionSet::range(lo, version_max);
    case Comparator::gt:
        return VersionSet::range(ceiling_of(p), version_max);
    case Comparator::lt:
        return VersionSet::range(Version{}, lo);
    case Comparator::le:
        return VersionSet::range(Version{}, ceiling_of(p));
    case Comparator::range:
        return VersionSet::range(lo, ceiling_of(c.upper));
    }
    return VersionSet::all();
}

struct ConstraintParser
{
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws()
    {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    [[nodiscard]] bool at_end() const { return pos >= text.size(); }

    std::optional<Comparator> read_operator()
    {
        const auto rest = text.substr(pos);
        const auto take = [this](std::size_t n, Comparator c) {
            pos += n;
            return c;
        };
        if (rest.starts_with(">="))
            return take(2, Comparator::ge);
        if (rest.starts_with("<="))
            return take(2, Comparator::le);
        if (rest.starts_with(">"))
            return take(1, Comparator::gt);
        if (rest.starts_with("<"))
            return take(1, Comparator::lt);
        if (rest.starts_with("^"))
            return take(1, Comparator::caret);
        if (rest.starts_with("~"))
            return take(1, Comparator::tilde);
        if (rest.starts_with("="))
            return take(1, Comparator::exact);
        return std::nullopt;
    }

    /// Returns the partial version and whether it contained a wildcard.
    std::pair<PartialVersion, bool> read_version()
    {
        const auto start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' || text[pos] == '*' ||
                   text[pos] == 'x' || text[pos] == 'X'))
            ++pos;
        const auto word = text.substr(start, pos - start);
        if (word.empty())
            throw std::invalid_argument("expected a version");
        const auto parts = split(word, '.');
        if (parts.size() > 3)
            throw std::invalid_argument("too many version components in '" + std::string(word) + "'");

        PartialVersion v;
        bool wildcard = false;
        std::optional<int>* slots[] = {&v.major, &v.minor, &v.patch};
        bool seen_wildcard = false;
        for (std::size_t i = 0; i < parts.size(); ++i)
        {
            const auto& part = parts[i];
            if (part == "*" || part == "x" || part == "X")
            {
                wildcard = true;
                seen_wildcard = true;
                continue;
            }
            if (part.empty() || seen_wildcard)
                throw std::invalid_argument("malformed version '" + std::string(word) + "'");
            int n = 0;
            const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), n);
            if (ec != std::errc{} || ptr != part.data() + part.size())
                throw std::invalid_argument("malformed version '" + std::string(word) + "'");
            *slots[i] = n;
        }
        return {v, wildcard};
    }

    std::vector<PragmaClause> read_group()
    {
        std::vector<PragmaClause> clauses;
        while (true)
        {
            skip_ws();
            if (at_end())
                break;
            PragmaClause clause;
            const auto op = read_operator();
            skip_ws();
            auto [version, wildcard] = read_version();
            clause.version = version;
            if (op)
                clause.comparator = *op;
            else
            {
                clause.comparator = wildcard ? Comparator::wildcard : Comparator::exact;
                const auto save = pos;
                skip_ws();
                if (pos < text.size() && text[pos] == '-' && pos > save)
                {
                    ++pos;
                    skip_ws();
                    clause.comparator = Comparator::range;
                    clause.upper = read_version().first;
                }
                else
                    pos = save;
            }
            clauses.push_back(clause);
        }
        if (clauses.empty())
            throw std::invalid_argument("empty version constraint");
        return clauses;
    }
};

bool has_missing_component(const PartialVersion& v) { return !v.complete(); }
}  // namespace

std::string Version::str() const
{
    return std::to_string(major) + "." + std::to_string(minor) + "." + std::to_string(patch);
}

std::optional<Version> Version::parse(std::string_view text)
{
    const auto parts = split(trim(text), '.');
    if (parts.size() != 3)
        return std::nullopt;
    int values[3] = {};
    for (std::size_t i = 0; i < 3; ++i)
    {
        const auto& p = parts[i];
        const auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), values[i]);
        if (p.empty() || ec != std::errc{} || ptr != p.data() + p.size())
            return std::nullopt;
    }
    return Version{values[0], values[1], values[2]};
}

VersionSet VersionSet::all()
{
    return range(Version{}, version_max);
}

VersionSet VersionSet::range(Version lo, Version hi)
{
    VersionSet s;
    if (lo < hi)
        s.intervals_.push_back({lo, hi});
    return s;
}

VersionSet VersionSet::intersect(const VersionSet& other) const
{
    VersionSet out;
    for (const auto& a : intervals_)
        for (const auto& b : other.intervals_)
        {
            const auto lo = std::max(a.lo, b.lo);
            const auto hi = std::min(a.hi, b.hi);
            if (lo < hi)
                out.intervals_.push_back({lo, hi});
        }
    std::sort(out.intervals_.begin(), out.intervals_.end(),
        [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    return out;
}

VersionSet VersionSet::unite(const VersionSet& other) const
{
    std::vector<Interval> all = intervals_;
    all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
    std::sort(all.begin(), all.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    VersionSet out;
    for (const auto& iv : all)
    {
        if (!out.intervals_.empty() && iv.lo <= out.intervals_.back().hi)
            out.intervals_.back().hi = std::max(out.intervals_.back().hi, iv.hi);
        else
            out.intervals_.push_back(iv);
    }
    return out;
}

bool VersionSet::contains(const Version& v) const noexcept
{
    return std::any_of(intervals_.begin(), intervals_.end(),
        [&v](const Interval& iv) { return iv.lo <= v && v < iv.hi; });
}

bool VersionSet::admits_below(const Version& bound) const noexcept
{
    return !intervals_.empty() && intervals_.front().lo < bound;
}

std::optional<Version> VersionSet::lower_bound() const noexcept
{
    if (intervals_.empty())
        return std::nullopt;
    return intervals_.front().lo;
}

PragmaConstraint parse_version_constraint(std::string_view constraint)
{
    PragmaConstraint pc;
    pc.text = std::string(trim(constraint));
    try
    {
        VersionSet admissible = VersionSet::none();
        std::size_t start = 0;
        const auto text = std::string_view(pc.text);
        while (true)
        {
            const auto bar = text.find("||", start);
            ConstraintParser parser{text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start)};
            auto group = parser.read_group();
            VersionSet group_set = VersionSet::all();
            for (const auto& clause : group)
            {
                group_set = group_set.intersect(clause_set(clause));
                pc.clauses.push_back(clause);
            }
            admissible = admissible.unite(group_set);
            if (bar == std::string_view::npos)
                break;
            start = bar + 2;
        }
        pc.admissible = admissible;
        pc.floating = pc.clauses.size() > 1 ||
                      std::any_of(pc.clauses.begin(), pc.clauses.end(), [](const PragmaClause& c) {
                          return c.comparator != Comparator::exact || has_missing_component(c.version);
                      });
    }
    catch (const std::invalid_argument& err)
    {
        pc.clauses.clear();
        pc.floating = true;
        pc.admissible = VersionSet::all();
        pc.diagnostic = std::string("unparseable version constraint: ") + err.what();
    }
    return pc;
}

PragmaConstraint parse_pragma(std::string_view line)
{
    auto body = trim(line);
    const auto bad = [&](std::string msg) {
        PragmaConstraint pc;
        pc.text = std::string(body);
        pc.diagnostic = std::move(msg);
        return pc;
    };
    if (!body.starts_with("pragma"))
        return bad("not a pragma directive");
    body.remove_prefix(6);
    body = trim(body);
    if (!body.starts_with("solidity"))
        return bad("not a solidity version pragma");
    body.remove_prefix(8);
    if (const auto semi = body.find(';'); semi != std::string_view::npos)
        body = body.substr(0, semi);
    return parse_version_constraint(body);
}
}  // namespace swelint::sol
