#pragma once

// Desk-scale check of the characterization: every rule on full preference
// profiles is classified by the oracles and compared, as a set of outcome
// tables, with every rule the two-step family can express.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "spfl/decompose.hpp"
#include "spfl/enumerate.hpp"
#include "spfl/oracles.hpp"

namespace spfl {

struct ExhaustiveLimits {
    int max_alternatives = 3;
    int max_agents = 3;
    /// Full preference profiles per candidate table.
    std::uint64_t max_profiles = 16;
    /// Up to this many candidates every table is classified by both
    /// oracles; beyond it the search keeps only tables without unilateral
    /// manipulations, pruning as soon as one appears.
    std::uint64_t full_classification_limit = std::uint64_t{1} << 16;
};

struct ExhaustiveFinding {
    std::string check;
    std::string detail;
    std::vector<Alt> table;
};

struct ExhaustiveReport {
    AlternativeSet X;
    AgentRoster roster;
    std::uint64_t profiles = 0;
    /// Number of candidate tables (|X| ^ profiles); exact as long as it fits.
    std::uint64_t candidates = 0;
    bool pruned = false;
    std::uint64_t search_nodes = 0;
    std::uint64_t sp_count = 0;
    std::uint64_t gsp_count = 0;
    std::uint64_t characterized_count = 0;
    std::uint64_t decomposed_count = 0;
    /// SP tables (full-profile outcome vectors), lexicographic.
    std::vector<std::vector<Alt>> sp_tables;
    std::vector<std::vector<Alt>> characterized_tables;
    std::vector<ExhaustiveFinding> findings;

    bool passed() const { return findings.empty(); }
};

namespace detail {

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / base)
            return std::numeric_limits<std::uint64_t>::max();
        r *= base;
    }
    return r;
}

/// All tables with no unilateral manipulation, by backtracking over
/// profiles in index order. After each assignment only the constraints
/// with already assigned single-agent neighbours are checked.
inline std::vector<std::vector<Alt>> sp_tables_pruned(const AlternativeSet& X, const AgentRoster& roster,
                                                      std::uint64_t& nodes)
{
    const int m = X.size();
    Domains dom(m);
    auto space = full_space(m, roster);
    const auto P = space.size();
    const int n = roster.n();
    struct Neighbour {
        std::uint64_t idx;
        int agent;
    };
    std::vector<std::vector<Neighbour>> earlier(P);
    for (std::uint64_t idx = 0; idx < P; ++idx)
        for (int i = 0; i < n; ++i) {
            int cur = space.coordinate(idx, i);
            for (int w = 0; w < cur; ++w)
                earlier[idx].push_back({idx - static_cast<std::uint64_t>(cur - w) * space.stride(i), i});
        }
    auto pref = [&](std::uint64_t idx, int i) -> const Preference& {
        return dom.of(roster.kind_at(i))[static_cast<std::size_t>(space.coordinate(idx, i))];
    };

    std::vector<std::vector<Alt>> found;
    std::vector<Alt> F(P, -1);
    auto rec = [&](auto&& self, std::uint64_t idx) -> void {
        if (idx == P) {
            found.push_back(F);
            return;
        }
        for (Alt y = 0; y < m; ++y) {
            ++nodes;
            bool ok = true;
            for (const auto& nb : earlier[idx]) {
                Alt x = F[nb.idx];
                if (x == y)
                    continue;
                if (pref(idx, nb.agent).strictly_prefers(x, y) || pref(nb.idx, nb.agent).strictly_prefers(y, x)) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            F[idx] = y;
            self(self, idx + 1);
        }
        F[idx] = -1;
    };
    rec(rec, 0);
    return found;
}

}  // namespace detail

inline ExhaustiveReport exhaustive_theorem_check(const AlternativeSet& X, const AgentRoster& roster,
                                                 const ExhaustiveLimits& limits = {}, unsigned jobs = 1)
{
    if (X.size() > limits.max_alternatives)
        throw SizeLimitError("exhaustive check: " + std::to_string(X.size()) + " alternatives exceed the limit of " +
                             std::to_string(limits.max_alternatives));
    if (roster.n() > limits.max_agents)
        throw SizeLimitError("exhaustive check: " + std::to_string(roster.n()) + " agents exceed the limit of " +
                             std::to_string(limits.max_agents));
    const int m = X.size();
    auto space = full_space(m, roster);
    if (space.size() > limits.max_profiles)
        throw SizeLimitError("exhaustive check: " + std::to_string(space.size()) +
                             " preference profiles per table exceed the limit of " +
                             std::to_string(limits.max_profiles));

    ExhaustiveReport rep;
    rep.X = X;
    rep.roster = roster;
    rep.profiles = space.size();
    rep.candidates = detail::checked_pow(static_cast<std::uint64_t>(m), space.size());
    rep.pruned = rep.candidates > limits.full_classification_limit;

    auto table_of = [&](const std::vector<Alt>& F) { return RuleTable{X, roster, std::nullopt, F}; };

    std::vector<std::vector<Alt>> gsp_tables;
    if (!rep.pruned) {
        std::vector<Alt> F(space.size(), 0);
        for (std::uint64_t t = 0; t < rep.candidates; ++t) {
            std::uint64_t code = t;
            for (std::uint64_t k = space.size(); k-- > 0;) {
                F[k] = static_cast<Alt>(code % static_cast<std::uint64_t>(m));
                code /= static_cast<std::uint64_t>(m);
            }
            ++rep.search_nodes;
            auto tb = table_of(F);
            if (!is_strategy_proof(tb, jobs))
                rep.sp_tables.push_back(F);
            if (!is_group_strategy_proof(tb, jobs))
                gsp_tables.push_back(F);
        }
    } else {
        rep.sp_tables = detail::sp_tables_pruned(X, roster, rep.search_nodes);
        // Every group strategy-proof table is strategy-proof, so only the
        // survivors need the coalitional oracle.
        for (const auto& F : rep.sp_tables) {
            if (is_strategy_proof(table_of(F), jobs))
                rep.findings.push_back({"pruned-search", "search kept a manipulable table", F});
            if (!is_group_strategy_proof(table_of(F), jobs))
                gsp_tables.push_back(F);
        }
    }
    std::sort(rep.sp_tables.begin(), rep.sp_tables.end());
    std::sort(gsp_tables.begin(), gsp_tables.end());
    rep.sp_count = rep.sp_tables.size();
    rep.gsp_count = gsp_tables.size();
    if (gsp_tables != rep.sp_tables)
        rep.findings.push_back({"sp-equals-gsp", "strategy-proof and group strategy-proof sets differ", {}});

    // (i) => (iii): each SP table has the first-step structure and decomposes.
    for (const auto& F : rep.sp_tables) {
        auto tb = table_of(F);
        auto rv = restricted_view(tb);
        if (auto* why = std::get_if<std::string>(&rv)) {
            rep.findings.push_back({"restricted-dependence", *why, F});
            continue;
        }
        const auto& view = std::get<RestrictedView>(rv);
        if (auto bad = check_first_step_structure(view, peak_slices(view)))
            rep.findings.push_back({"first-step-structure", *bad, F});
        auto dec = decompose(tb);
        if (!dec.ok())
            rep.findings.push_back({"decompose", dec.failure, F});
        else
            ++rep.decomposed_count;
    }

    // (iii) => (i): every expressible rule, over every range.
    std::set<std::vector<Alt>> characterized;
    EnumerationLimits el{m, limits.max_agents + 1};
    for (unsigned mask = 1; mask < (1U << m); ++mask) {
        Range omega = Range::from_mask(m, mask);
        for (const auto& spec : enumerate_rulespecs(X, omega, roster, el)) {
            auto F = full_outcomes(tabulate(spec));
            if (!characterized.insert(F).second)
                continue;
            if (auto w = is_strategy_proof(table_of(F), jobs))
                rep.findings.push_back({"characterized-is-sp", "an expressible rule is manipulable", F});
        }
    }
    rep.characterized_tables.assign(characterized.begin(), characterized.end());
    rep.characterized_count = rep.characterized_tables.size();
    if (rep.characterized_tables != rep.sp_tables) {
        std::vector<std::vector<Alt>> only_sp, only_char;
        std::set_difference(rep.sp_tables.begin(), rep.sp_tables.end(), rep.characterized_tables.begin(),
                            rep.characterized_tables.end(), std::back_inserter(only_sp));
        std::set_difference(rep.characterized_tables.begin(), rep.characterized_tables.end(), rep.sp_tables.begin(),
                            rep.sp_tables.end(), std::back_inserter(only_char));
        for (const auto& F : only_sp)
            rep.findings.push_back({"sets-equal", "strategy-proof table outside the characterized family", F});
        for (const auto& F : only_char)
            rep.findings.push_back({"sets-equal", "characterized table missing from the strategy-proof set", F});
    }
    return rep;
}

}  // namespace spfl
