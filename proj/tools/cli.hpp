#pragma once

// Command-line front end. run_cli is callable in-process so tests can
// compare its output with direct library calls.
//
// Exit codes: 0 ok, 1 the verdict came with a witness, 2 usage, parse or
// validation error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spfl/spfl.hpp"

namespace spfl::cli {

enum Exit : int { kOk = 0, kWitness = 1, kError = 2 };

struct Options {
    std::string rule_file;
    std::string table_file;
    std::string profile_file;
    bool seed_example1 = false;
    bool pretty = false;
    unsigned jobs = 0;
    std::string peaks;
    std::string dips;
    std::string alternatives;
    std::string omega;
    std::string peaked;
    std::string dipped;
    int max_alternatives = 3;
    int max_agents = 3;
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ','))
        if (!cur.empty())
            out.push_back(cur);
    return out;
}

inline std::vector<Location> parse_locations(const std::string& s, const char* what)
{
    std::vector<Location> out;
    for (const auto& tok : split_list(s)) {
        try {
            out.push_back(parse_location(tok));
        } catch (const ValidationError& e) {
            throw ValidationError(std::string(what) + ": " + e.what());
        }
    }
    return out;
}

inline std::vector<int> parse_ids(const std::string& s, const char* what)
{
    std::vector<int> out;
    for (const auto& tok : split_list(s)) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || used == 0)
            throw ValidationError(std::string(what) + ": \"" + tok + "\" is not an agent id");
        out.push_back(v);
    }
    return out;
}

inline Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError(path + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

inline std::vector<Alt> to_alts(const AlternativeSet& X, const std::vector<Location>& locs, const char* what)
{
    std::vector<Alt> out;
    for (const auto& l : locs) {
        Alt x = X.index_of(l);
        if (x < 0)
            throw ValidationError(std::string(what) + ": " + to_string(l) + " is not an alternative");
        out.push_back(x);
    }
    return out;
}

/// Loads and validates the rule; violations are reported with their codes.
inline RuleSpec load_rule(const Options& o)
{
    RuleSpec spec;
    if (o.seed_example1) {
        if (!o.rule_file.empty())
            throw ValidationError("--rule and --seed-example1 are exclusive");
        spec = example1_spec();
    } else if (!o.rule_file.empty()) {
        try {
            spec = rulespec_from_json(read_json_file(o.rule_file));
        } catch (const ValidationError& e) {
            std::string what = e.what();
            throw ValidationError(what.rfind(o.rule_file, 0) == 0 ? what : o.rule_file + what);
        }
    } else {
        throw ValidationError("a rule is required (--rule FILE or --seed-example1)");
    }
    return spec;
}

inline void print_json(std::ostream& out, const Json& j) { out << j.dump() << "\n"; }

inline std::string family_text(const MonotoneFamily& f)
{
    std::string s = "{";
    for (std::size_t k = 0; k < f.minimal().size(); ++k)
        s += (k ? ", " : "") + describe_coalition(f.minimal()[k]);
    return s + "}";
}

inline void print_spec_text(std::ostream& out, const RuleSpec& spec)
{
    const auto& X = spec.X;
    out << "range:";
    for (Alt x : spec.omega.members())
        out << " " << to_string(X[x]);
    out << "\npeaked: " << describe_coalition(spec.roster.peaked_mask())
        << "  dipped: " << describe_coalition(spec.roster.dipped_mask()) << "\n";
    if (spec.omega_empty)
        out << "first step fixed at " << elem_key(X, *spec.omega_empty) << "\n";
    else
        for (std::size_t k = 0; k < spec.lcs.r_omega.size(); ++k)
            out << "  L(" << elem_key(X, spec.lcs.r_omega[k]) << ") minimal: " << family_text(spec.lcs.families[k])
                << "\n";
    for (const auto& d : spec.deciders)
        out << "  W(" << elem_key(X, d.pair) << "): " << family_text(d.winning) << "\n";
}

inline std::string pref_text(const AlternativeSet& X, const Preference& p)
{
    std::string s = std::string(to_string(p.kind())) + " ";
    for (std::size_t k = 0; k < p.ranking().size(); ++k)
        s += (k ? ">" : "") + to_string(X[p.ranking()[k]]);
    return s;
}

inline void print_manipulation_text(std::ostream& out, const AlternativeSet& X, const ManipulationWitness& w)
{
    out << "profile:\n";
    for (std::size_t i = 0; i < w.profile.size(); ++i)
        out << "  agent " << i + 1 << ": " << pref_text(X, w.profile[i]) << "\n";
    auto ids = coalition_ids(w.deviators);
    for (std::size_t k = 0; k < ids.size(); ++k)
        out << "agent " << ids[k] << " reports " << pref_text(X, w.deviation[k]) << "\n";
    out << "outcome " << to_string(X[w.before]) << " -> " << to_string(X[w.after]) << "\n";
}

/// Table for the oracles: --table as given, or the rule over full profiles.
inline RuleTable load_table(const Options& o)
{
    if (!o.table_file.empty()) {
        if (o.seed_example1 || !o.rule_file.empty())
            throw ValidationError("--table cannot be combined with a rule");
        try {
            return table_from_json(read_json_file(o.table_file));
        } catch (const ValidationError& e) {
            std::string what = e.what();
            throw ValidationError(what.rfind(o.table_file, 0) == 0 ? what : o.table_file + what);
        }
    }
    RuleSpec spec = load_rule(o);
    if (auto v = validate(spec); !v.empty())
        throw ValidationError("rule is invalid: " + v.front().code + ": " + v.front().detail);
    return tabulate_full(spec);
}

inline AlternativeSet instance_X(const Options& o)
{
    if (o.alternatives.empty())
        throw ValidationError("--alternatives is required");
    return AlternativeSet(parse_locations(o.alternatives, "--alternatives"));
}

inline AgentRoster instance_roster(const Options& o)
{
    return AgentRoster(parse_ids(o.peaked, "--peaked"), parse_ids(o.dipped, "--dipped"));
}

}  // namespace detail

inline int cmd_validate(const Options& o, std::ostream& out, std::ostream& err)
{
    RuleSpec spec = detail::load_rule(o);
    auto v = validate(spec);
    if (v.empty() && !range_matches(spec))
        v.push_back({"rule.range", "the rule does not attain every alternative of its declared range"});
    if (!v.empty()) {
        err << "invalid rule: " << v.front().code << ": " << v.front().detail << "\n";
        if (o.pretty) {
            for (const auto& x : v)
                out << x.code << ": " << x.detail << "\n";
        } else {
            detail::print_json(out, Json{{"valid", false}, {"violations", violations_json(v)}});
        }
        return kError;
    }
    if (o.pretty) {
        out << "valid\n";
        detail::print_spec_text(out, spec);
    } else {
        detail::print_json(out, Json{{"valid", true}});
    }
    return kOk;
}

inline int cmd_eval(const Options& o, std::ostream& out, std::ostream&)
{
    RuleSpec spec = detail::load_rule(o);
    if (auto v = validate(spec); !v.empty())
        throw ValidationError("rule is invalid: " + v.front().code + ": " + v.front().detail);
    const auto& X = spec.X;
    RestrictedProfile rp;
    std::optional<Profile> full;
    if (!o.profile_file.empty()) {
        if (!o.peaks.empty() || !o.dips.empty())
            throw ValidationError("--profile cannot be combined with --peaks/--dips");
        Json j = detail::read_json_file(o.profile_file);
        try {
            if (j.is_array())
                full = profile_from_json(X, j, "");
            else
                rp = restricted_from_json(X, j, "");
        } catch (const ValidationError& e) {
            throw ValidationError(o.profile_file + e.what());
        }
    } else {
        rp.peaks = detail::to_alts(X, detail::parse_locations(o.peaks, "--peaks"), "--peaks");
        rp.dips = detail::to_alts(X, detail::parse_locations(o.dips, "--dips"), "--dips");
    }
    if (full) {
        check_profile(*full, spec.roster, X.size());
        rp = restrict_profile(*full, spec.roster, spec.omega);
    }
    check_restricted(rp, spec.roster, spec.omega);
    Alt y = evaluate(spec, rp);
    if (o.pretty) {
        ExtElem first = gmvf(spec, rp.peaks);
        out << "first step: " << elem_key(X, first) << "\noutcome: " << to_string(X[y]) << "\n";
    } else {
        detail::print_json(out, location_json(X[y]));
    }
    return kOk;
}

inline int cmd_verify_incentives(const Options& o, std::ostream& out, bool group)
{
    RuleTable t = detail::load_table(o);
    auto w = group ? is_group_strategy_proof(t, o.jobs) : is_strategy_proof(t, o.jobs);
    const char* name = group ? "group-strategy-proof" : "strategy-proof";
    if (o.pretty) {
        out << name << ": " << (w ? "no" : "yes") << "\n";
        if (w)
            detail::print_manipulation_text(out, t.X, *w);
    } else {
        Json j{{"property", name}, {"holds", !w}};
        if (w)
            j["witness"] = witness_json(t.X, *w);
        detail::print_json(out, j);
    }
    return w ? kWitness : kOk;
}

inline int cmd_verify_pe(const Options& o, std::ostream& out)
{
    RuleTable t = detail::load_table(o);
    auto w = is_pareto_efficient(t, o.jobs);
    if (o.pretty) {
        out << "pareto-efficient: " << (w ? "no" : "yes") << "\n";
        if (w) {
            for (std::size_t i = 0; i < w->profile.size(); ++i)
                out << "  agent " << i + 1 << ": " << detail::pref_text(t.X, w->profile[i]) << "\n";
            out << "chosen " << to_string(t.X[w->chosen]) << ", everyone prefers " << to_string(t.X[w->dominating])
                << "\n";
        }
    } else {
        Json j{{"property", "pareto-efficient"}, {"holds", !w}};
        if (w)
            j["witness"] = pareto_json(t.X, *w);
        detail::print_json(out, j);
    }
    return w ? kWitness : kOk;
}

inline int cmd_decompose(const Options& o, std::ostream& out)
{
    RuleTable t = detail::load_table(o);
    auto r = decompose(t);
    if (!r.ok()) {
        if (o.pretty)
            out << "not decomposable: " << r.failure << "\n";
        else
            detail::print_json(out, Json{{"decomposable", false}, {"reason", r.failure}});
        return kWitness;
    }
    if (o.pretty)
        detail::print_spec_text(out, *r.spec);
    else
        detail::print_json(out, rulespec_json(*r.spec));
    return kOk;
}

inline int cmd_enumerate(const Options& o, std::ostream& out)
{
    AlternativeSet X = detail::instance_X(o);
    AgentRoster roster = detail::instance_roster(o);
    if (X.size() > o.max_alternatives)
        throw SizeLimitError(std::to_string(X.size()) + " alternatives exceed --max-alternatives " +
                             std::to_string(o.max_alternatives));
    EnumerationLimits lim{o.max_alternatives, o.max_agents};
    std::vector<Range> ranges;
    if (!o.omega.empty()) {
        auto om = detail::to_alts(X, detail::parse_locations(o.omega, "--omega"), "--omega");
        std::sort(om.begin(), om.end());
        om.erase(std::unique(om.begin(), om.end()), om.end());
        if (om.empty())
            throw ValidationError("--omega: range must be nonempty");
        ranges.emplace_back(X.size(), om);
    } else {
        for (unsigned mask = 1; mask < (1U << X.size()); ++mask)
            ranges.push_back(Range::from_mask(X.size(), mask));
    }
    Json rules = Json::array();
    std::size_t count = 0;
    for (const auto& omega : ranges)
        for (const auto& spec : enumerate_rulespecs(X, omega, roster, lim)) {
            ++count;
            if (o.pretty) {
                out << "rule " << count << "\n";
                detail::print_spec_text(out, spec);
            } else {
                rules.push_back(rulespec_json(spec));
            }
        }
    if (o.pretty)
        out << count << " rules\n";
    else
        detail::print_json(out, Json{{"count", count}, {"rules", rules}});
    return kOk;
}

inline int cmd_exhaustive(const Options& o, std::ostream& out)
{
    AlternativeSet X = detail::instance_X(o);
    AgentRoster roster = detail::instance_roster(o);
    ExhaustiveLimits lim;
    lim.max_alternatives = o.max_alternatives;
    lim.max_agents = o.max_agents;
    auto rep = exhaustive_theorem_check(X, roster, lim, o.jobs == 0 ? 1 : o.jobs);
    if (o.pretty) {
        out << "candidate tables: " << rep.candidates << (rep.pruned ? " (pruned search)" : "") << "\n"
            << "strategy-proof: " << rep.sp_count << "\n"
            << "group strategy-proof: " << rep.gsp_count << "\n"
            << "characterized: " << rep.characterized_count << "\n"
            << (rep.passed() ? "all checks passed" : "checks FAILED") << "\n";
        for (const auto& f : rep.findings)
            out << "  " << f.check << ": " << f.detail << "\n";
    } else {
        detail::print_json(out, report_json(rep));
    }
    return rep.passed() ? kOk : kWitness;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Strategy-proof facility location on a line with single-peaked and single-dipped agents"};
    app.require_subcommand(1);
    Options o;

    auto rule_opts = [&](CLI::App* s) {
        s->add_option("--rule", o.rule_file, "rule spec JSON file");
        s->add_flag("--seed-example1", o.seed_example1, "use the built-in example rule");
    };
    auto table_opts = [&](CLI::App* s) {
        rule_opts(s);
        s->add_option("--table", o.table_file, "outcome table JSON file");
        s->add_option("--jobs", o.jobs, "worker threads (0 = all cores)");
    };
    auto instance_opts = [&](CLI::App* s) {
        s->add_option("--alternatives", o.alternatives, "comma-separated locations")->required();
        s->add_option("--peaked", o.peaked, "comma-separated peaked agent ids");
        s->add_option("--dipped", o.dipped, "comma-separated dipped agent ids");
        s->add_option("--max-alternatives", o.max_alternatives, "size guard")->capture_default_str();
        s->add_option("--max-agents", o.max_agents, "size guard")->capture_default_str();
    };
    app.add_flag("--pretty", o.pretty, "human-readable output");

    auto* validate_cmd = app.add_subcommand("validate", "check a rule spec");
    rule_opts(validate_cmd);
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a rule at a profile");
    rule_opts(eval_cmd);
    eval_cmd->add_option("--peaks", o.peaks, "restricted peaks of the peaked agents");
    eval_cmd->add_option("--dips", o.dips, "restricted dips of the dipped agents");
    eval_cmd->add_option("--profile", o.profile_file, "profile JSON file (full or restricted)");
    auto* sp_cmd = app.add_subcommand("verify-sp", "search for a unilateral manipulation");
    table_opts(sp_cmd);
    auto* gsp_cmd = app.add_subcommand("verify-gsp", "search for a coalitional manipulation");
    table_opts(gsp_cmd);
    auto* pe_cmd = app.add_subcommand("verify-pe", "search for a Pareto-dominated outcome");
    table_opts(pe_cmd);
    auto* dec_cmd = app.add_subcommand("decompose", "recover the two-step parameters of a table");
    table_opts(dec_cmd);
    auto* enum_cmd = app.add_subcommand("enumerate-rules", "list every rule of the family");
    instance_opts(enum_cmd);
    enum_cmd->add_option("--omega", o.omega, "restrict to one range");
    auto* ex_cmd = app.add_subcommand("exhaustive-check", "classify every outcome table of a tiny instance");
    instance_opts(ex_cmd);
    ex_cmd->add_option("--jobs", o.jobs, "worker threads");
    for (auto* s : app.get_subcommands({}))
        s->add_flag("--pretty", o.pretty, "human-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kError;
    }

    try {
        if (validate_cmd->parsed())
            return cmd_validate(o, out, err);
        if (eval_cmd->parsed())
            return cmd_eval(o, out, err);
        if (sp_cmd->parsed())
            return cmd_verify_incentives(o, out, false);
        if (gsp_cmd->parsed())
            return cmd_verify_incentives(o, out, true);
        if (pe_cmd->parsed())
            return cmd_verify_pe(o, out);
        if (dec_cmd->parsed())
            return cmd_decompose(o, out);
        if (enum_cmd->parsed())
            return cmd_enumerate(o, out);
        if (ex_cmd->parsed())
            return cmd_exhaustive(o, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    } catch (const SizeLimitError& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}

}  // namespace spfl::cli
