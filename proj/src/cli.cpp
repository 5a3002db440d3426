// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

#include "swelint/cli.hpp"

#include "swelint/keccak.hpp"
#include "swelint/registry.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace swelint::cli
{
namespace fs = std::filesystem;

namespace
{
std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::set<SweId> parse_rule_list(const std::vector<std::string>& items)
{
    std::set<SweId> out;
    for (const auto& item : items)
        for (const auto& part : split(item, ','))
        {
            const auto t = trim(part);
            if (t.empty())
                continue;
            const auto id = SweId::parse(t);
            if (!id)
                throw UsageError("'" + std::string(t) + "' is not a rule id");
            out.insert(*id);
        }
    return out;
}

Severity parse_severity_or_throw(std::string_view text)
{
    const auto s = parse_severity(text);
    if (!s)
        throw UsageError("unknown severity '" + std::string(text) + "'");
    return *s;
}

LanguageFilter parse_language_filter(std::string_view text)
{
    const auto t = to_lower(text);
    if (t == "auto")
        return LanguageFilter::auto_detect;
    if (t == "sol" || t == "solidity")
        return LanguageFilter::solidity;
    if (t == "go" || t == "go-chaincode")
        return LanguageFilter::go;
    throw UsageError("unknown language '" + std::string(text) + "'");
}

OutputFormat parse_format(std::string_view text)
{
    if (text == "text")
        return OutputFormat::text;
    if (text == "json")
        return OutputFormat::json;
    throw UsageError("unknown format '" + std::string(text) + "'");
}

std::map<SweId, Severity> parse_overrides(const std::vector<std::string>& items)
{
    std::map<SweId, Severity> out;
    for (const auto& item : items)
    {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw UsageError("severity override '" + item + "' must look like SWE-N=level");
        const auto id = SweId::parse(trim(std::string_view(item).substr(0, eq)));
        if (!id)
            throw UsageError("'" + item.substr(0, eq) + "' is not a rule id");
        out[*id] = parse_severity_or_throw(trim(std::string_view(item).substr(eq + 1)));
    }
    return out;
}

std::optional<Language> language_of(const fs::path& p, LanguageFilter filter)
{
    const auto ext = p.extension().string();
    if (ext == ".sol" && filter != LanguageFilter::go)
        return Language::solidity;
    if (ext == ".go" && filter != LanguageFilter::solidity)
        return Language::go_chaincode;
    return std::nullopt;
}

void print_entry(const registry::RegistryEntry& e, std::ostream& out)
{
    auto join = [](const auto& items, auto to_text) {
        std::string s;
        for (const auto& i : items)
            s += (s.empty() ? "" : ", ") + std::string(to_text(i));
        return s.empty() ? std::string("-") : s;
    };
    const auto ident = [](const std::string& s) { return s; };
    out << e.id.str() << "  " << e.name << "\n";
    out << "status: " << registry::to_string(e.status) << "\n";
    out << "aliases: " << join(e.aliases, ident) << "\n";
    out << "blockchains: " << join(e.blockchains, [](auto b) { return registry::to_string(b); }) << "\n";
    out << "languages: " << join(e.source_languages, [](auto l) { return registry::to_string(l); }) << "\n";
    if (e.detectability)
        out << "detectability: " << registry::to_string(*e.detectability) << "\n";
    if (e.default_severity)
        out << "default severity: " << to_string(*e.default_severity) << "\n";
    out << "cross references: " << join(e.cross_refs, ident) << "\n";
    if (!e.cross_ref_target.empty())
        out << "see: " << join(e.cross_ref_target, [](const SweId& id) { return id.str(); }) << "\n";
    if (e.elimination_reason)
        out << "eliminated: " << *e.elimination_reason << "\n";
    out << "description: " << e.description << "\n";
}

std::string describe(Language l)
{
    return l == Language::solidity ? "solidity" : "go";
}

struct ScanFlags
{
    std::vector<std::string> paths;
    std::string format;
    std::string fail_on;
    std::vector<std::string> enable;
    std::vector<std::string> disable;
    std::vector<std::string> severity;
    std::string registry;
    std::string advisories;
    std::string allowlist;
    std::string lang;
    std::string config;
    std::string min_compiler;
    bool no_suppressions = false;
    unsigned jobs = 0;
};

int cmd_scan(const ScanFlags& flags, const CLI::App& sub, std::ostream& out, std::ostream& err)
{
    ScanConfig config;
    if (!flags.config.empty())
        apply_config_file(read_text(flags.config), config);

    auto given = [&](const char* name) { return sub.count(name) > 0; };
    if (!flags.paths.empty())
        config.paths = flags.paths;
    if (given("--format"))
        config.format = parse_format(flags.format);
    if (given("--fail-on"))
        config.fail_on = parse_severity_or_throw(flags.fail_on);
    if (given("--enable"))
        config.enabled = parse_rule_list(flags.enable);
    if (given("--disable"))
        config.disabled = parse_rule_list(flags.disable);
    if (given("--severity"))
        for (const auto& [id, s] : parse_overrides(flags.severity))
            config.severity_overrides[id] = s;
    if (given("--registry"))
        config.registry_path = flags.registry;
    if (given("--advisories"))
        config.advisory_path = flags.advisories;
    if (given("--allowlist"))
        config.allowlist_path = flags.allowlist;
    if (given("--lang"))
        config.language = parse_language_filter(flags.lang);
    if (given("--min-compiler"))
    {
        const auto v = sol::Version::parse(flags.min_compiler);
        if (!v)
            throw UsageError("bad compiler version '" + flags.min_compiler + "'");
        config.solidity.minimum_compiler = *v;
    }
    if (flags.no_suppressions)
        config.honor_suppressions = false;
    if (given("--jobs"))
        config.jobs = std::max(1U, flags.jobs);

    if (config.paths.empty())
        throw UsageError("scan needs at least one path");

    std::set<SweId> known;
    for (const auto& r : all_rules())
        known.insert(r.id);
    for (const auto* set : {&config.enabled, &config.disabled})
        for (const auto& id : *set)
            if (known.count(id) == 0)
                throw UsageError(id.str() + " has no detector");
    for (const auto& [id, s] : config.severity_overrides)
        if (known.count(id) == 0)
            throw UsageError(id.str() + " has no detector");
    for (const auto& id : config.enabled)
        if (config.disabled.count(id) > 0)
            throw UsageError(id.str() + " is both enabled and disabled");

    if (config.registry_path)
    {
        const auto reg = registry::load_registry(read_text(*config.registry_path));
        for (const auto& id : known)
        {
            const auto* e = reg.find(id);
            if (!e || e->status != registry::Status::active)
            {
                err << "note: " << id.str() << " is not active in " << *config.registry_path << "; rule skipped\n";
                config.disabled.insert(id);
            }
        }
    }
    if (config.advisory_path)
        config.solidity.advisories = rules::load_advisories(read_text(*config.advisory_path));
    if (config.allowlist_path)
        config.chaincode.allowlist = chaincode::load_allowlist(read_text(*config.allowlist_path));

    std::vector<std::string> missing;
    const auto files = discover(config.paths, config.language, missing);
    if (files.empty())
    {
        for (const auto& m : missing)
            err << m << ": cannot read path\n";
        throw UsageError("no .sol or .go files found");
    }

    auto input = load_inputs(files, config.jobs);
    for (const auto& m : missing)
        input.diagnostics.push_back({m, {}, "cannot read path"});
    const auto report = run_scan(input, config);

    out << render(report, config.format);
    if (config.format == OutputFormat::text)
        for (const auto& d : report.diagnostics)
            err << d.path << ":" << d.span.line << ":" << d.span.column << ": diagnostic: " << d.message << "\n";
    return exit_code(report, config.fail_on);
}
}  // namespace

void apply_config_file(std::string_view json_text, ScanConfig& config)
{
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(json_text);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw UsageError("config must be a JSON object");
    auto strings = [](const nlohmann::json& v, const std::string& key) {
        if (!v.is_array() || !std::all_of(v.begin(), v.end(), [](const auto& x) { return x.is_string(); }))
            throw UsageError("config key '" + key + "' must be an array of strings");
        return v.get<std::vector<std::string>>();
    };
    auto text = [](const nlohmann::json& v, const std::string& key) {
        if (!v.is_string())
            throw UsageError("config key '" + key + "' must be a string");
        return v.get<std::string>();
    };
    for (const auto& [key, v] : doc.items())
    {
        if (key == "paths")
            config.paths = strings(v, key);
        else if (key == "lang")
            config.language = parse_language_filter(text(v, key));
        else if (key == "enable")
            config.enabled = parse_rule_list(strings(v, key));
        else if (key == "disable")
            config.disabled = parse_rule_list(strings(v, key));
        else if (key == "severity")
        {
            if (!v.is_object())
                throw UsageError("config key 'severity' must map rule ids to levels");
            for (const auto& [id, level] : v.items())
                for (const auto& [k, s] : parse_overrides({id + "=" + text(level, key)}))
                    config.severity_overrides[k] = s;
        }
        else if (key == "fail_on")
            config.fail_on = parse_severity_or_throw(text(v, key));
        else if (key == "format")
            config.format = parse_format(text(v, key));
        else if (key == "registry")
            config.registry_path = text(v, key);
        else if (key == "advisories")
            config.advisory_path = text(v, key);
        else if (key == "allowlist")
            config.allowlist_path = text(v, key);
        else if (key == "suppressions")
        {
            if (!v.is_boolean())
                throw UsageError("config key 'suppressions' must be a boolean");
            config.honor_suppressions = v.get<bool>();
        }
        else if (key == "jobs")
        {
            if (!v.is_number_unsigned())
                throw UsageError("config key 'jobs' must be a positive integer");
            config.jobs = std::max(1U, v.get<unsigned>());
        }
        else if (key == "min_compiler")
        {
            const auto ver = sol::Version::parse(text(v, key));
            if (!ver)
                throw UsageError("config key 'min_compiler' must be a version like 0.8.0");
            config.solidity.minimum_compiler = *ver;
        }
        else if (key == "secret_names")
            config.solidity.secret_names = strings(v, key);
        else
            throw UsageError("unknown config key '" + key + "'");
    }
}

std::vector<std::pair<std::string, Language>> discover(const std::vector<std::string>& paths, LanguageFilter filter,
    std::vector<std::string>& missing)
{
    std::map<std::string, Language> found;
    for (const auto& p : paths)
    {
        std::error_code ec;
        const fs::path path(p);
        if (fs::is_directory(path, ec))
        {
            for (fs::recursive_directory_iterator it(path, ec), end; !ec && it != end; it.increment(ec))
                if (it->is_regular_file(ec))
                    if (const auto lang = language_of(it->path(), filter))
                        found.emplace(it->path().generic_string(), *lang);
        }
        else if (fs::exists(path, ec))
        {
            if (const auto lang = language_of(path, filter))
                found.emplace(path.generic_string(), *lang);
        }
        else
            missing.push_back(p);
    }
    return {found.begin(), found.end()};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Static checker for smart contract weaknesses", "swelint"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version));

    ScanFlags flags;
    auto* scan = app.add_subcommand("scan", "Scan Solidity and Go chaincode files");
    scan->add_option("paths", flags.paths, "Files or directories");
    scan->add_option("--format", flags.format, "text or json");
    scan->add_option("--fail-on", flags.fail_on, "Lowest severity that fails the run (default high)");
    scan->add_option("--enable", flags.enable, "Only run these rules (SWE-N[,..])");
    scan->add_option("--disable", flags.disable, "Skip these rules (SWE-N[,..])");
    scan->add_option("--severity", flags.severity, "Severity override SWE-N=level");
    scan->add_option("--registry", flags.registry, "Registry file to check rule ids against");
    scan->add_option("--advisories", flags.advisories, "Advisory file for SWE-153");
    scan->add_option("--allowlist", flags.allowlist, "Import allowlist for SWE-171");
    scan->add_option("--lang", flags.lang, "sol, go or auto");
    scan->add_option("--config", flags.config, "JSON configuration file");
    scan->add_option("--min-compiler", flags.min_compiler, "Oldest acceptable compiler for SWE-102");
    scan->add_option("--jobs,-j", flags.jobs, "Worker threads");
    scan->add_flag("--no-suppressions", flags.no_suppressions, "Ignore swelint-disable-next-line comments");

    std::string reg_path;
    registry::EntryFilter filter;
    std::string status, chain, language, detect, key;
    auto* reg = app.add_subcommand("registry", "Query the weakness registry");
    reg->add_option("--registry", reg_path, "Registry file instead of the bundled one");
    reg->require_subcommand(1);
    auto* list = reg->add_subcommand("list", "List entries");
    list->add_option("--status", status, "active, reserved or eliminated");
    list->add_option("--blockchain", chain, "ethereum, hyperledger or eosio");
    list->add_option("--language", language, "solidity, go or cpp");
    list->add_option("--detectability", detect, "automated, heuristic or manual");
    auto* show = reg->add_subcommand("show", "Show one entry by id, name or alias");
    show->add_option("key", key, "Entry key")->required();
    auto* exp = reg->add_subcommand("export", "Print the registry file");
    for (auto* sub : {list, show, exp})
        sub->add_option("--registry", reg_path, "Registry file instead of the bundled one");

    std::string signature;
    bool have_signature = false;
    auto* sel = app.add_subcommand("selector", "Print the 4-byte selector of a canonical signature");
    sel->add_option("signature", signature, "e.g. transfer(address,uint256)")->required();

    auto* rules_cmd = app.add_subcommand("rules", "List implemented detectors");

    std::vector<std::string> argv_store{"swelint"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store)
        argv.push_back(a.c_str());

    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::Success& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e, out, err);
        return exit_usage;
    }
    have_signature = sel->parsed();

    try
    {
        if (scan->parsed())
            return cmd_scan(flags, *scan, out, err);

        if (reg->parsed())
        {
            std::string file_text;
            if (!reg_path.empty())
                file_text = read_text(reg_path);
            const registry::Registry loaded =
                reg_path.empty() ? registry::bundled_registry() : registry::load_registry(file_text);
            if (exp->parsed())
            {
                out << (reg_path.empty() ? std::string(registry::bundled_registry_text()) : file_text);
                return exit_clean;
            }
            if (show->parsed())
            {
                print_entry(registry::lookup_entry(loaded, key), out);
                return exit_clean;
            }
            if (!status.empty())
                filter.status = registry::parse_status(status);
            if (!chain.empty())
                filter.blockchain = registry::parse_blockchain(chain);
            if (!language.empty())
                filter.language = registry::parse_language(language);
            if (!detect.empty())
                filter.detectability = registry::parse_detectability(detect);
            for (const auto* e : registry::list_entries(loaded, filter))
                out << e->id.str() << "\t" << registry::to_string(e->status) << "\t" << e->name << "\n";
            return exit_clean;
        }

        if (have_signature)
        {
            out << selector(signature).hex() << "\n";
            return exit_clean;
        }

        if (rules_cmd->parsed())
        {
            for (const auto& r : all_rules())
                out << r.id.str() << "\t" << describe(r.language) << "\t" << to_string(r.default_severity) << "/"
                    << to_string(r.confidence) << "\t" << r.applicability.describe() << "\t" << r.name << "\n";
            return exit_clean;
        }
    }
    catch (const UsageError& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const registry::LookupError& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const registry::LoadError& e)
    {
        err << "error: registry: " << e.what();
        if (e.line() > 0)
            err << " (line " << e.line() << ")";
        err << "\n";
        return exit_usage;
    }
    catch (const registry::ValidationError& e)
    {
        err << "error: registry: " << e.what() << "\n";
        for (const auto& v : e.violations())
            err << "  " << v.id.str() << ": " << v.message << "\n";
        return exit_usage;
    }
    catch (const std::invalid_argument& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const nlohmann::json::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
}  // namespace swelint::cli
