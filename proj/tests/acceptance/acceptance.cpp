// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Counts that are derived rather than published are
// compared with tests/fixtures/exhaustive_counts.json.

#include <bit>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "spfl/spfl.hpp"
#include "support/brute.hpp"

using namespace spfl;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Outcome()>& body)
{
    auto t0 = std::chrono::steady_clock::now();
    Outcome r{false, ""};
    try {
        r = body();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!r.pass)
        ++failures;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", secs);
    std::cout << (r.pass ? "PASS" : "FAIL") << "  [" << id << "] " << title << " (" << buf << ")"
              << (r.detail.empty() ? "" : ": " + r.detail) << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Json fixtures()
{
    std::ifstream in(std::string(SPFL_FIXTURE_DIR) + "/exhaustive_counts.json");
    if (!in)
        throw std::runtime_error("fixture file missing");
    return Json::parse(in);
}

std::string instance_key(const AlternativeSet& X, const AgentRoster& r)
{
    std::ostringstream s;
    s << "X=";
    for (int k = 0; k < X.size(); ++k)
        s << (k ? "," : "") << to_string(X[k]);
    s << " A=";
    for (std::size_t k = 0; k < r.peaked().size(); ++k)
        s << (k ? "," : "") << r.peaked()[k];
    s << " D=";
    for (std::size_t k = 0; k < r.dipped().size(); ++k)
        s << (k ? "," : "") << r.dipped()[k];
    return s.str();
}

std::string fixture_mismatch(const ExhaustiveReport& rep)
{
    Json f = fixtures();
    auto key = instance_key(rep.X, rep.roster);
    if (!f.contains(key))
        return "no frozen counts for " + key;
    const Json& e = f[key];
    std::ostringstream s;
    auto cmp = [&](const char* name, std::uint64_t got) {
        if (e.at(name).get<std::uint64_t>() != got)
            s << name << " " << got << " != frozen " << e.at(name).get<std::uint64_t>() << "; ";
    };
    cmp("candidates", rep.candidates);
    cmp("sp_count", rep.sp_count);
    cmp("gsp_count", rep.gsp_count);
    cmp("characterized_count", rep.characterized_count);
    return s.str();
}

std::string first_finding(const ExhaustiveReport& rep)
{
    return rep.findings.empty() ? "" : rep.findings.front().check + ": " + rep.findings.front().detail;
}

/// Strategy-proof tables counted table by table, with no pruning and no
/// library indexing: every table over the brute-force profile list is
/// checked for a unilateral manipulation from scratch.
std::set<std::vector<Alt>> brute_sp_tables(const AlternativeSet& X, const AgentRoster& roster)
{
    const int m = X.size();
    auto kind = brute::kinds(roster);
    std::vector<std::vector<brute::Ranking>> profiles;
    brute::for_each_profile(m, kind, [&](const std::vector<brute::Ranking>& p) {
        profiles.push_back(p);
        return false;
    });
    const std::size_t P = profiles.size();
    // neighbour[k] = (profile index, agent) pairs differing from k in one agent
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> neighbour(P);
    for (std::size_t a = 0; a < P; ++a)
        for (std::size_t b = 0; b < P; ++b) {
            std::size_t diff = 0, who = 0;
            for (std::size_t i = 0; i < kind.size(); ++i)
                if (profiles[a][i] != profiles[b][i]) {
                    ++diff;
                    who = i;
                }
            if (diff == 1)
                neighbour[a].push_back({b, who});
        }
    std::set<std::vector<Alt>> out;
    std::vector<Alt> F(P, 0);
    for (;;) {
        bool sp = true;
        for (std::size_t a = 0; a < P && sp; ++a)
            for (const auto& [b, i] : neighbour[a])
                if (F[b] != F[a] && brute::better(profiles[a][i], F[b], F[a])) {
                    sp = false;
                    break;
                }
        if (sp) {
            // express in the library's profile order
            RuleTable t = make_full_table(X, roster, [&](std::span<const Preference* const> prefs) {
                for (std::size_t k = 0; k < P; ++k) {
                    bool same = true;
                    for (std::size_t i = 0; i < prefs.size() && same; ++i)
                        same = prefs[i]->ranking() == profiles[k][i];
                    if (same)
                        return F[k];
                }
                return -1;
            });
            out.insert(t.outcomes);
        }
        std::size_t k = P;
        while (k-- > 0) {
            if (++F[k] < m)
                break;
            F[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1))
            break;
    }
    return out;
}

/// Structural facts checked straight from the full table: group full
/// profiles by the vector of range-restricted peaks, collect outcomes.
std::string first_step_facts(const AlternativeSet& X, const AgentRoster& roster, const std::vector<Alt>& F)
{
    const int m = X.size();
    auto kind = brute::kinds(roster);
    std::set<Alt> range(F.begin(), F.end());
    std::vector<Alt> rv(range.begin(), range.end());
    std::map<std::vector<Alt>, std::set<Alt>> by_peaks;
    RuleTable t{X, roster, std::nullopt, F};
    auto f = brute::from_table(t);
    brute::for_each_profile(m, kind, [&](const std::vector<brute::Ranking>& prof) {
        std::vector<Alt> peaks;
        for (std::size_t i = 0; i < prof.size(); ++i)
            if (kind[i])
                for (int a : prof[i])
                    if (range.count(a)) {
                        peaks.push_back(a);
                        break;
                    }
        by_peaks[peaks].insert(f(prof));
        return false;
    });
    std::set<Alt> sole;
    for (const auto& [peaks, outs] : by_peaks) {
        if (outs.size() > 2)
            return "more than two outcomes for one peak vector";
        if (outs.size() == 2) {
            auto lo = std::find(rv.begin(), rv.end(), *outs.begin());
            auto hi = std::find(rv.begin(), rv.end(), *outs.rbegin());
            if (hi - lo != 1)
                return "non-contiguous pair for one peak vector";
        } else {
            sole.insert(*outs.begin());
        }
    }
    for (std::size_t k = 1; k + 1 < rv.size(); ++k)
        if (!sole.count(rv[k]))
            return "interior point never the sole outcome";
    return "";
}

struct Instance {
    AlternativeSet X;
    AgentRoster roster;
    ExhaustiveReport report;
};

std::vector<Instance> exhaustive_runs;

}  // namespace

int main()
{
    const auto example = example1_spec();

    criterion(1, "Built-in example rule gives 2, 2, 3 at R, R', R''", [&]() -> Outcome {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<std::pair<RestrictedProfile, int>> cases{
            {{{0, 1, 3}, {0, 2, 2}}, 2}, {{{0, 2, 3}, {0, 2, 2}}, 2}, {{{0, 2, 3}, {0, 1, 2}}, 3}};
        std::ostringstream got;
        bool ok = validate(example).empty();
        for (const auto& [rp, want] : cases) {
            int y = example.X[evaluate(example, rp)].numerator();
            got << y << " ";
            ok = ok && y == want;
        }
        // R'' again, as full preferences
        Profile full{Preference(PrefKind::Peaked, {0, 1, 2, 3}), Preference(PrefKind::Peaked, {2, 1, 3, 0}),
                     Preference(PrefKind::Peaked, {3, 2, 1, 0}), Preference(PrefKind::Dipped, {3, 2, 1, 0}),
                     Preference(PrefKind::Dipped, {3, 0, 2, 1}), Preference(PrefKind::Dipped, {0, 1, 3, 2})};
        ok = ok && example.X[evaluate_full(example, full)] == Location(3);
        double s = seconds_since(t0);
        return {ok && s < 1.0, "got " + got.str() + "in " + std::to_string(s) + "s"};
    });

    criterion(2, "Built-in example rule is strategy-proof and group strategy-proof over all 8^6 profiles", [&]() -> Outcome {
        auto t0 = std::chrono::steady_clock::now();
        auto t = tabulate_full(example);
        auto sp = is_strategy_proof(t);
        auto gsp = is_group_strategy_proof(t);
        double s = seconds_since(t0);
        std::string d = std::to_string(t.outcomes.size()) + " profiles, " + std::to_string(s) + "s";
        return {!sp && !gsp && t.outcomes.size() == 262144 && s < 120.0, d};
    });

    criterion(3, "Exhaustive check X={1,2}, A={1}, D={2}: SP = GSP = characterized", [&]() -> Outcome {
        auto t0 = std::chrono::steady_clock::now();
        AlternativeSet X = AlternativeSet::iota(2);
        AgentRoster r({1}, {2});
        auto rep = exhaustive_theorem_check(X, r);
        double s = seconds_since(t0);
        exhaustive_runs.push_back({X, r, rep});
        auto brute_sp = brute_sp_tables(X, r);
        std::set<std::vector<Alt>> sp(rep.sp_tables.begin(), rep.sp_tables.end());
        std::string bad = first_finding(rep) + fixture_mismatch(rep);
        if (sp != brute_sp)
            bad += "library and brute-force SP sets differ; ";
        std::string d = std::to_string(rep.candidates) + " tables, " + std::to_string(rep.sp_count) + " SP, " +
                        std::to_string(rep.gsp_count) + " GSP, " + std::to_string(rep.characterized_count) +
                        " characterized";
        return {bad.empty() && !rep.pruned && rep.candidates == 16 && s < 1.0, bad.empty() ? d : d + "; " + bad};
    });

    criterion(4, "Exhaustive check X={1,2,3}, A={1}, D={2} with pruning: SP = GSP = characterized", [&]() -> Outcome {
        AlternativeSet X = AlternativeSet::iota(3);
        AgentRoster r({1}, {2});
        auto rep = exhaustive_theorem_check(X, r);
        exhaustive_runs.push_back({X, r, rep});
        auto brute_sp = brute_sp_tables(X, r);
        std::set<std::vector<Alt>> sp(rep.sp_tables.begin(), rep.sp_tables.end());
        std::string bad = first_finding(rep) + fixture_mismatch(rep);
        if (sp != brute_sp)
            bad += "library and unpruned brute-force SP sets differ; ";
        std::string d = std::to_string(rep.candidates) + " tables, " + std::to_string(rep.search_nodes) +
                        " search nodes, " + std::to_string(rep.sp_count) + " SP, " + std::to_string(rep.gsp_count) +
                        " GSP, " + std::to_string(rep.characterized_count) + " characterized";
        return {bad.empty() && rep.pruned, bad.empty() ? d : d + "; " + bad};
    });

    criterion(5, "First-step structure on every SP table from [3] and [4]", [&]() -> Outcome {
        std::size_t checked = 0;
        for (const auto& run : exhaustive_runs)
            for (const auto& F : run.report.sp_tables) {
                RuleTable t{run.X, run.roster, std::nullopt, F};
                auto rv = restricted_view(t);
                if (auto* why = std::get_if<std::string>(&rv))
                    return {false, *why};
                const auto& v = std::get<RestrictedView>(rv);
                if (auto bad = check_first_step_structure(v, peak_slices(v)))
                    return {false, *bad};
                if (auto bad = first_step_facts(run.X, run.roster, F); !bad.empty())
                    return {false, bad};
                ++checked;
            }
        return {checked > 0 && exhaustive_runs.size() == 2, std::to_string(checked) + " tables"};
    });

    criterion(6, "Decompose/compose round trip on SP tables and random specs", [&]() -> Outcome {
        std::size_t tables = 0, randoms = 0;
        for (const auto& run : exhaustive_runs)
            for (const auto& F : run.report.sp_tables) {
                auto r = decompose(RuleTable{run.X, run.roster, std::nullopt, F});
                if (!r.ok())
                    return {false, r.failure};
                if (tabulate_full(*r.spec).outcomes != F)
                    return {false, "recomposed table differs"};
                ++tables;
            }
        std::mt19937 rng(20240611);
        std::size_t max_range = 0, max_agents = 0;
        while (randoms < 32) {
            // cycle the range size through 1..4
            const int size = 1 + static_cast<int>(randoms % 4);
            int m = std::uniform_int_distribution<int>(std::max(2, size), 5)(rng);
            int n = std::uniform_int_distribution<int>(1, m <= 4 ? 6 : 5)(rng);
            int a = std::uniform_int_distribution<int>(size > 2 ? 1 : 0, n)(rng);
            auto X = AlternativeSet::iota(m);
            auto roster = AgentRoster::blocks(a, n - a);
            unsigned mask = std::uniform_int_distribution<unsigned>(1, (1U << m) - 1)(rng);
            if (std::popcount(mask) != size)
                continue;
            Range omega = Range::from_mask(m, mask);
            auto spec = random_rulespec(X, omega, roster, rng);
            auto full = tabulate_full(spec);
            auto r = decompose(full);
            if (!r.ok())
                return {false, "random spec: " + r.failure};
            if (tabulate_full(*r.spec).outcomes != full.outcomes)
                return {false, "random spec: recomposed table differs"};
            ++randoms;
            max_range = std::max<std::size_t>(max_range, omega.size());
            max_agents = std::max<std::size_t>(max_agents, n);
        }
        return {tables > 0, std::to_string(tables) + " SP tables, " + std::to_string(randoms) +
                                " random specs (max range " + std::to_string(max_range) + ", max agents " +
                                std::to_string(max_agents) + ")"};
    });

    criterion(7, "Pareto trichotomy at X={1,2,3}", [&]() -> Outcome {
        AlternativeSet X = AlternativeSet::iota(3);
        const Range full = Range::full(3);
        const Range ends(3, {0, 2});
        std::size_t part[3] = {0, 0, 0};
        for (auto roster : {AgentRoster({1}, {2}), AgentRoster({}, {1, 2}), AgentRoster({1, 2}, {})}) {
            auto kind = brute::kinds(roster);
            auto rep = exhaustive_theorem_check(X, roster);
            if (!rep.passed())
                return {false, first_finding(rep)};
            for (unsigned mask = 1; mask < 8; ++mask) {
                Range omega = Range::from_mask(3, mask);
                for (const auto& spec : enumerate_rulespecs(X, omega, roster)) {
                    auto t = tabulate_full(spec);
                    bool pe = !is_pareto_efficient(t);
                    if (pe == brute::pareto_dominated_somewhere(3, kind, brute::from_table(t)))
                        return {false, "library and brute-force Pareto verdicts differ"};
                    if (!std::binary_search(rep.sp_tables.begin(), rep.sp_tables.end(), t.outcomes))
                        return {false, "enumerated rule missing from the SP set"};
                    if (omega == full) {
                        if (!pe)
                            return {false, "full-range rule is not efficient (" + instance_key(X, roster) + ")"};
                        ++part[0];
                    } else if (omega == ends) {
                        bool expected = roster.peaked().empty() ||
                                        spec.lcs.r_omega == std::vector<ExtElem>{ExtElem::pair(0, 2)};
                        if (pe != expected)
                            return {false, "endpoint-range rule breaks the efficiency condition"};
                        ++part[2];
                    } else {
                        if (pe)
                            return {false, "rule with a partial range is efficient"};
                        ++part[1];
                    }
                }
            }
        }
        return {part[0] > 0 && part[1] > 0 && part[2] > 0,
                "(i) " + std::to_string(part[0]) + " rules, (ii) " + std::to_string(part[1]) + " rules, (iii) " +
                    std::to_string(part[2]) + " rules"};
    });

    criterion(8, "Domain sizes 2^(m-1) for m = 2..5", [&]() -> Outcome {
        std::ostringstream d;
        for (int m = 2; m <= 5; ++m)
            for (auto kind : {PrefKind::Peaked, PrefKind::Dipped}) {
                auto dom = enumerate_domain(kind, m);
                auto ref = brute::domain(kind == PrefKind::Peaked, m);
                std::vector<brute::Ranking> got;
                for (const auto& p : dom)
                    got.push_back(p.ranking());
                if (dom.size() != (std::size_t{1} << (m - 1)) || got != ref)
                    return {false, "m=" + std::to_string(m)};
                if (kind == PrefKind::Peaked)
                    d << dom.size() << " ";
            }
        return {true, d.str()};
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
