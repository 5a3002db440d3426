// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

#include "swelint/engine.hpp"

#include "swelint/parser.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>
#include <tuple>

namespace swelint
{
namespace
{
constexpr std::string_view directive = "swelint-disable-next-line";

/// Runs `work(i)` for i in [0, n) on up to `jobs` threads.
template <typename Work>
void parallel_for(std::size_t n, unsigned jobs, Work work)
{
    const auto workers = std::min<std::size_t>(std::max(1U, jobs), n);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
                work(i);
        });
}

std::optional<std::string> read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        return std::nullopt;
    return ss.str();
}

std::string comment_body(std::string_view text)
{
    if (text.starts_with("//"))
        text.remove_prefix(2);
    else if (text.starts_with("/*"))
    {
        text.remove_prefix(2);
        if (text.ends_with("*/"))
            text.remove_suffix(2);
    }
    return std::string(trim(text));
}

struct SpanKey
{
    std::string path;
    std::size_t offset;
    std::size_t length;
    friend auto operator<=>(const SpanKey&, const SpanKey&) = default;
};

SpanKey key_of(const Finding& f)
{
    return {f.path, f.span.offset, f.span.length};
}

/// Overlapping rules: the second is dropped where the first fires on the same span.
constexpr std::array<std::pair<int, int>, 2> precedence{{{113, 157}, {126, 104}}};

std::vector<Finding> apply_precedence(std::vector<Finding> findings)
{
    std::set<std::pair<int, SpanKey>> present;
    for (const auto& f : findings)
        present.insert({f.rule.number, key_of(f)});
    std::erase_if(findings, [&](const Finding& f) {
        return std::any_of(precedence.begin(), precedence.end(), [&](const auto& p) {
            return f.rule.number == p.second && present.count({p.first, key_of(f)}) > 0;
        });
    });
    return findings;
}

std::vector<Finding> deduplicate(std::vector<Finding> findings)
{
    std::set<std::pair<int, SpanKey>> seen;
    std::erase_if(findings, [&](const Finding& f) { return !seen.insert({f.rule.number, key_of(f)}).second; });
    return findings;
}

bool finding_less(const Finding& a, const Finding& b)
{
    return std::tie(a.path, a.span.offset, a.rule, a.span.length, a.message) <
           std::tie(b.path, b.span.offset, b.rule, b.span.length, b.message);
}

bool diagnostic_less(const FileDiagnostic& a, const FileDiagnostic& b)
{
    return std::tie(a.path, a.span.offset, a.message) < std::tie(b.path, b.span.offset, b.message);
}

struct Collected
{
    std::vector<Suppression> suppressions;
    std::vector<FileDiagnostic> diagnostics;
};

template <typename Comments>
void collect_suppressions(const std::string& path, const Comments& comments, Collected& out)
{
    for (const auto& [text, span] : comments)
    {
        auto parsed = parse_suppression(text, span.end_line);
        if (parsed.suppression)
            out.suppressions.push_back(std::move(*parsed.suppression));
        else if (!parsed.error.empty())
            out.diagnostics.push_back({path, span, parsed.error});
    }
}

std::string snippet_of(std::string_view line)
{
    return std::string(trim(line));
}
}  // namespace

bool ScanConfig::rule_enabled(SweId id) const
{
    if (disabled.count(id) > 0)
        return false;
    return enabled.empty() || enabled.count(id) > 0;
}

std::vector<DetectorRule> all_rules()
{
    auto out = rules::solidity_rule_set();
    auto go = chaincode::chaincode_rule_set();
    out.insert(out.end(), go.begin(), go.end());
    std::sort(out.begin(), out.end(), [](const DetectorRule& a, const DetectorRule& b) { return a.id < b.id; });
    return out;
}

ScanInput load_inputs(const std::vector<std::pair<std::string, Language>>& files, unsigned jobs)
{
    struct Loaded
    {
        std::optional<sol::SourceUnit> unit;
        std::optional<chaincode::ChaincodeFile> go;
        std::optional<FileDiagnostic> error;
    };
    std::vector<Loaded> loaded(files.size());
    parallel_for(files.size(), jobs, [&](std::size_t i) {
        const auto& [path, lang] = files[i];
        const auto text = read_file(path);
        if (!text)
        {
            loaded[i].error = FileDiagnostic{path, {}, "cannot read file"};
            return;
        }
        if (lang == Language::solidity)
            loaded[i].unit = sol::parse_source(*text, path);
        else
            loaded[i].go = chaincode::parse_chaincode(*text, path);
    });
    ScanInput input;
    for (auto& l : loaded)
    {
        if (l.unit)
            input.solidity.push_back(std::move(*l.unit));
        if (l.go)
            input.chaincode.push_back(std::move(*l.go));
        if (l.error)
            input.diagnostics.push_back(std::move(*l.error));
    }
    return input;
}

SuppressionParse parse_suppression(std::string_view comment_text, std::uint32_t line)
{
    const auto body = comment_body(comment_text);
    if (!std::string_view(body).starts_with(directive))
        return {};
    auto rest = std::string_view(body).substr(directive.size());
    if (!rest.empty() && rest.front() != ' ' && rest.front() != '\t')
        return {};
    rest = trim(rest);
    if (rest.empty())
        return {std::nullopt, "malformed suppression: expected a rule list or 'all'"};
    Suppression s;
    s.line = line;
    if (rest == "all")
    {
        s.all = true;
        return {s, {}};
    }
    for (const auto& item : split(rest, ','))
    {
        const auto id = SweId::parse(trim(item));
        if (!id)
            return {std::nullopt, "malformed suppression: '" + std::string(trim(item)) + "' is not a rule id"};
        s.rules.insert(*id);
    }
    return {s, {}};
}

std::vector<Finding> suppress(std::vector<Finding> findings, const std::vector<Suppression>& suppressions)
{
    std::erase_if(findings, [&](const Finding& f) {
        return std::any_of(suppressions.begin(), suppressions.end(), [&](const Suppression& s) {
            return s.line + 1 == f.span.line && (s.all || s.rules.count(f.rule) > 0);
        });
    });
    return findings;
}

ScanReport run_scan(const ScanInput& input, const ScanConfig& config)
{
    ScanReport report;
    report.files_scanned = input.solidity.size() + input.chaincode.size();
    report.diagnostics = input.diagnostics;

    std::map<SweId, DetectorRule> meta;
    for (auto& r : all_rules())
        meta.emplace(r.id, r);
    const rules::RuleFilter filter = [&](const DetectorRule& r) { return config.rule_enabled(r.id); };

    std::vector<RawFinding> raw;
    std::map<std::string, Collected> per_path;

    // Solidity
    std::vector<const sol::SourceUnit*> units;
    for (const auto& u : input.solidity)
    {
        units.push_back(&u);
        for (const auto& d : u.parse_diagnostics)
            report.diagnostics.push_back({u.path, d.span, d.message});
        std::vector<std::pair<std::string, sol::Span>> comments;
        for (const auto& t : u.tokens)
            if (t.kind == sol::TokenKind::comment)
                comments.emplace_back(t.text, t.span);
        collect_suppressions(u.path, comments, per_path[u.path]);
    }
    if (!units.empty())
    {
        const auto program = rules::SolidityProgram::build(units, config.solidity);
        for (std::size_t i = 0; i < units.size(); ++i)
            for (const auto& d : program.symbols[i].diagnostics)
                report.diagnostics.push_back({units[i]->path, d.span, d.message});
        std::vector<std::vector<RawFinding>> per_file(units.size());
        parallel_for(units.size(), config.jobs,
            [&](std::size_t i) { per_file[i] = rules::run_file_rules(program, i, filter); });
        for (auto& v : per_file)
            raw.insert(raw.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
        auto cross = rules::run_program_rules(program, filter);
        raw.insert(raw.end(), std::make_move_iterator(cross.begin()), std::make_move_iterator(cross.end()));
    }

    // Go chaincode
    std::vector<std::vector<RawFinding>> go_results(input.chaincode.size());
    parallel_for(input.chaincode.size(), config.jobs, [&](std::size_t i) {
        for (const auto& r : chaincode::chaincode_rules())
            if (filter(r.meta))
                r.check(input.chaincode[i], config.chaincode, go_results[i]);
    });
    for (std::size_t i = 0; i < input.chaincode.size(); ++i)
    {
        const auto& f = input.chaincode[i];
        for (const auto& [span, msg] : f.diagnostics)
            report.diagnostics.push_back({f.path, span, msg});
        std::vector<std::pair<std::string, sol::Span>> comments;
        for (const auto& c : f.comments)
            comments.emplace_back(c.text, c.span);
        collect_suppressions(f.path, comments, per_path[f.path]);
        raw.insert(raw.end(), std::make_move_iterator(go_results[i].begin()),
            std::make_move_iterator(go_results[i].end()));
    }

    // Resolve severity, confidence and snippet.
    std::map<std::string, std::function<std::string_view(std::uint32_t)>> lines;
    for (const auto& u : input.solidity)
        lines[u.path] = [&u](std::uint32_t l) { return u.line_text(l); };
    for (const auto& f : input.chaincode)
        lines[f.path] = [&f](std::uint32_t l) { return f.line_text(l); };

    std::vector<Finding> findings;
    findings.reserve(raw.size());
    for (auto& r : raw)
    {
        const auto m = meta.find(r.rule);
        if (m == meta.end())
            continue;
        Finding f;
        f.rule = r.rule;
        f.severity = m->second.default_severity;
        if (r.severity)
            f.severity = *r.severity;
        if (const auto o = config.severity_overrides.find(r.rule); o != config.severity_overrides.end())
            f.severity = o->second;
        f.confidence = m->second.confidence;
        f.path = std::move(r.path);
        f.span = r.span;
        f.construct = std::move(r.construct);
        f.message = std::move(r.message);
        if (const auto l = lines.find(f.path); l != lines.end())
            f.snippet = snippet_of(l->second(f.span.line));
        findings.push_back(std::move(f));
    }

    std::sort(findings.begin(), findings.end(), finding_less);
    findings = deduplicate(apply_precedence(std::move(findings)));
    for (const auto& f : findings)
        ++report.rule_stats[f.rule];

    if (config.honor_suppressions)
    {
        std::vector<Finding> kept;
        for (auto& [path, collected] : per_path)
        {
            report.diagnostics.insert(report.diagnostics.end(), collected.diagnostics.begin(),
                collected.diagnostics.end());
            std::vector<Finding> mine;
            for (const auto& f : findings)
                if (f.path == path)
                    mine.push_back(f);
            mine = suppress(std::move(mine), collected.suppressions);
            kept.insert(kept.end(), mine.begin(), mine.end());
        }
        for (const auto& f : findings)
            if (per_path.count(f.path) == 0)
                kept.push_back(f);
        findings = std::move(kept);
        std::sort(findings.begin(), findings.end(), finding_less);
    }

    report.findings = std::move(findings);
    std::sort(report.diagnostics.begin(), report.diagnostics.end(), diagnostic_less);
    return report;
}

std::string render_text(const ScanReport& report)
{
    std::string out;
    for (const auto& f : report.findings)
        out += f.path + ":" + std::to_string(f.span.line) + ":" + std::to_string(f.span.column) + " " + f.rule.str() +
               " " + std::string(to_string(f.severity)) + " " + f.message + "\n";
    return out;
}

std::string render_json(const ScanReport& report)
{
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["tool_version"] = report.tool_version;
    doc["files_scanned"] = report.files_scanned;
    auto findings = ordered_json::array();
    for (const auto& f : report.findings)
    {
        ordered_json j;
        j["rule"] = f.rule.str();
        j["severity"] = to_string(f.severity);
        j["confidence"] = to_string(f.confidence);
        j["path"] = f.path;
        j["line"] = f.span.line;
        j["column"] = f.span.column;
        j["end_line"] = f.span.end_line;
        j["end_column"] = f.span.end_column;
        j["construct"] = f.construct;
        j["message"] = f.message;
        j["snippet"] = f.snippet;
        findings.push_back(std::move(j));
    }
    doc["findings"] = std::move(findings);
    auto diagnostics = ordered_json::array();
    for (const auto& d : report.diagnostics)
    {
        ordered_json j;
        j["path"] = d.path;
        j["line"] = d.span.line;
        j["column"] = d.span.column;
        j["message"] = d.message;
        diagnostics.push_back(std::move(j));
    }
    doc["diagnostics"] = std::move(diagnostics);
    auto stats = ordered_json::object();
    for (const auto& [id, n] : report.rule_stats)
        stats[id.str()] = n;
    doc["rule_stats"] = std::move(stats);
    return doc.dump(2) + "\n";
}

std::string render(const ScanReport& report, OutputFormat format)
{
    return format == OutputFormat::json ? render_json(report) : render_text(report);
}

int exit_code(const ScanReport& report, Severity fail_on) noexcept
{
    return std::any_of(report.findings.begin(), report.findings.end(),
               [&](const Finding& f) { return f.severity >= fail_on; })
               ? 1
               : 0;
}
}  // namespace swelint
