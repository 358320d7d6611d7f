#pragma once

// Recovers the two-step parameters (r_omega, L, W) of a strategy-proof
// table by the constructive route: restricted table, per-peak-vector
// outcome sets, left coalition system built upward along <*, left-decisive
// sets as the minimal left-preferring coalitions that obtain the left
// alternative. The result is validated and recomposed; any mismatch is a
// failure.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spfl/rulekernel.hpp"
#include "spfl/table.hpp"

namespace spfl {

/// The table seen through restricted peaks and dips over its own range.
struct RestrictedView {
    AlternativeSet X;
    AgentRoster roster;
    Range omega;
    /// Outcome per restricted profile (grid = omega), agent order.
    std::vector<Alt> outcomes;
    ProfileSpace space;
    /// Peaked / dipped agent positions.
    std::vector<int> peaked_pos;
    std::vector<int> dipped_pos;
};

/// Fails (returns the reason) when the rule reacts to preferences beyond
/// the restricted peaks and dips.
inline std::variant<RestrictedView, std::string> restricted_view(const RuleTable& table)
{
    auto full = full_outcomes(table);
    Range omega = range_of(RuleTable{table.X, table.roster, std::nullopt, full});
    Domains dom(table.X.size());
    auto types_p = grid_types(dom, PrefKind::Peaked, omega);
    auto types_d = grid_types(dom, PrefKind::Dipped, omega);
    auto fs = full_space(table.X.size(), table.roster);
    auto gs = grid_space(omega, table.roster);

    RestrictedView v{table.X, table.roster, omega, std::vector<Alt>(gs.size(), -1), gs, {}, {}};
    std::vector<int> c(static_cast<std::size_t>(table.roster.n()));
    for (std::uint64_t idx = 0; idx < fs.size(); ++idx) {
        fs.decode(idx, c);
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = (table.roster.kind_at(static_cast<int>(i)) == PrefKind::Peaked ? types_p : types_d)[static_cast<std::size_t>(c[i])];
        auto g = gs.encode(c);
        if (v.outcomes[g] == -1)
            v.outcomes[g] = full[idx];
        else if (v.outcomes[g] != full[idx])
            return std::string("outcome depends on preferences beyond the restricted peaks and dips (full profile #") +
                   std::to_string(idx) + ")";
    }
    for (int i = 0; i < table.roster.n(); ++i)
        (table.roster.kind_at(i) == PrefKind::Peaked ? v.peaked_pos : v.dipped_pos).push_back(i);
    return v;
}

/// For every vector of restricted peaks (lexicographic over the peaked
/// agents), the bitmask of outcomes reachable by varying the dips.
struct PeakSlices {
    ProfileSpace peak_space;
    ProfileSpace dip_space;
    std::vector<std::uint32_t> outcome_sets;
};

inline std::uint64_t restricted_index(const RestrictedView& v, std::uint64_t peak_idx, std::uint64_t dip_idx,
                                      const PeakSlices& s)
{
    std::uint64_t idx = 0;
    for (std::size_t k = 0; k < v.peaked_pos.size(); ++k)
        idx += static_cast<std::uint64_t>(s.peak_space.coordinate(peak_idx, static_cast<int>(k))) *
               v.space.stride(v.peaked_pos[k]);
    for (std::size_t k = 0; k < v.dipped_pos.size(); ++k)
        idx += static_cast<std::uint64_t>(s.dip_space.coordinate(dip_idx, static_cast<int>(k))) *
               v.space.stride(v.dipped_pos[k]);
    return idx;
}

inline PeakSlices peak_slices(const RestrictedView& v)
{
    PeakSlices s{ProfileSpace(std::vector<int>(v.peaked_pos.size(), v.omega.size())),
                 ProfileSpace(std::vector<int>(v.dipped_pos.size(), v.omega.size())),
                 {}};
    s.outcome_sets.assign(s.peak_space.size(), 0);
    for (std::uint64_t p = 0; p < s.peak_space.size(); ++p)
        for (std::uint64_t d = 0; d < s.dip_space.size(); ++d)
            s.outcome_sets[p] |= 1U << v.outcomes[restricted_index(v, p, d, s)];
    return s;
}

/// Structural facts every strategy-proof table must show: at most two
/// outcomes per peak vector, such pairs contiguous in the range, and
/// every interior range point the sole outcome for some peak vector.
/// Returns the first broken fact, or nullopt.
inline std::optional<std::string> check_first_step_structure(const RestrictedView& v, const PeakSlices& s)
{
    std::vector<bool> sole(static_cast<std::size_t>(v.X.size()), false);
    for (std::uint64_t p = 0; p < s.peak_space.size(); ++p) {
        std::uint32_t set = s.outcome_sets[p];
        int count = std::popcount(set);
        if (count > 2)
            return "peak vector #" + std::to_string(p) + " leaves " + std::to_string(count) + " outcomes open";
        if (count == 2) {
            Alt lo = std::countr_zero(set);
            Alt hi = 31 - std::countl_zero(set);
            if (v.omega.rank(hi) != v.omega.rank(lo) + 1)
                return "peak vector #" + std::to_string(p) + " leaves a non-contiguous pair open";
        } else {
            sole[static_cast<std::size_t>(std::countr_zero(set))] = true;
        }
    }
    for (Alt x : interior(v.omega))
        if (!sole[static_cast<std::size_t>(x)])
            return "interior alternative " + to_string(v.X[x]) + " is never the sole outcome of a peak vector";
    return std::nullopt;
}

struct DecomposeResult {
    std::optional<RuleSpec> spec;
    std::string failure;

    bool ok() const { return spec.has_value(); }
};

inline DecomposeResult decompose(const RuleTable& table)
{
    auto rv = restricted_view(table);
    if (auto* why = std::get_if<std::string>(&rv))
        return {std::nullopt, *why};
    const auto& v = std::get<RestrictedView>(rv);
    const Range& omega = v.omega;
    ExtOrder order(omega);
    auto slices = peak_slices(v);
    if (auto bad = check_first_step_structure(v, slices))
        return {std::nullopt, *bad};

    // first step per peak vector
    std::vector<ExtElem> first(slices.peak_space.size());
    for (std::uint64_t p = 0; p < first.size(); ++p) {
        std::uint32_t set = slices.outcome_sets[p];
        first[p] = ExtElem{std::countr_zero(set), 31 - std::countl_zero(set)};
    }
    std::vector<ExtElem> r_omega;
    for (const auto& e : order.elements())
        if (std::find(first.begin(), first.end(), e) != first.end())
            r_omega.push_back(e);

    RuleSpec spec{v.X, v.roster, omega, {}, {}, std::nullopt};
    const int a = static_cast<int>(v.peaked_pos.size());

    auto left_set = [&](std::uint64_t p, const ExtElem& alpha) {
        Coalition c = 0;
        int lim = order.position(alpha);
        for (int k = 0; k < a; ++k)
            if (2 * slices.peak_space.coordinate(p, k) <= lim)
                c |= 1U << v.peaked_pos[static_cast<std::size_t>(k)];
        return c;
    };

    if (a == 0) {
        spec.omega_empty = first[0];
        spec.lcs = {{first[0]}, {MonotoneFamily::generated_by({0})}};
    } else {
        // Endpoints belong to r_omega exactly when unanimity there forces them.
        auto unanimous = [&](int rank) {
            std::uint64_t p = 0;
            for (int k = 0; k < a; ++k)
                p += static_cast<std::uint64_t>(rank) * slices.peak_space.stride(k);
            return first[p];
        };
        bool min_in = std::find(r_omega.begin(), r_omega.end(), ExtElem::alt(omega.min())) != r_omega.end();
        bool max_in = std::find(r_omega.begin(), r_omega.end(), ExtElem::alt(omega.max())) != r_omega.end();
        if (min_in != (unanimous(0) == ExtElem::alt(omega.min())) ||
            max_in != (unanimous(omega.size() - 1) == ExtElem::alt(omega.max())))
            return {std::nullopt, "range endpoints in r_omega disagree with the unanimity test"};

        // L(alpha) = L(previous) plus every left-set realised with first step alpha.
        // Kept as explicit sets so that upward closure is checked, not imposed.
        const std::uint32_t subsets = 1U << a;
        auto to_local = [&](Coalition c) {
            std::uint32_t s = 0;
            for (int k = 0; k < a; ++k)
                if (c >> v.peaked_pos[static_cast<std::size_t>(k)] & 1U)
                    s |= 1U << k;
            return s;
        };
        auto to_global = [&](std::uint32_t s) {
            Coalition c = 0;
            for (int k = 0; k < a; ++k)
                if (s >> k & 1U)
                    c |= 1U << v.peaked_pos[static_cast<std::size_t>(k)];
            return c;
        };
        std::vector<bool> member(subsets, false);
        for (const auto& alpha : r_omega) {
            for (std::uint64_t p = 0; p < first.size(); ++p)
                if (first[p] == alpha)
                    member[to_local(left_set(p, alpha))] = true;
            std::vector<Coalition> gens;
            for (std::uint32_t s = 0; s < subsets; ++s) {
                if (!member[s])
                    continue;
                for (int k = 0; k < a; ++k)
                    if (!member[s | 1U << k])
                        return {std::nullopt, "constructed L(" + elem_key(v.X, alpha) + ") is not upward closed"};
                gens.push_back(to_global(s));
            }
            spec.lcs.r_omega.push_back(alpha);
            spec.lcs.families.push_back(MonotoneFamily::generated_by(std::move(gens)));
        }
    }

    // Left-decisive sets: minimal left-preferring coalitions that obtain l.
    for (const auto& alpha : spec.lcs.r_omega) {
        if (!alpha.is_pair())
            continue;
        std::vector<Coalition> wins;
        for (std::uint64_t p = 0; p < first.size(); ++p) {
            if (first[p] != alpha)
                continue;
            for (std::uint64_t d = 0; d < slices.dip_space.size(); ++d) {
                if (v.outcomes[restricted_index(v, p, d, slices)] != alpha.lo)
                    continue;
                Coalition L = 0;
                for (int k = 0; k < a; ++k)
                    if (omega[slices.peak_space.coordinate(p, k)] <= alpha.lo)
                        L |= 1U << v.peaked_pos[static_cast<std::size_t>(k)];
                for (std::size_t k = 0; k < v.dipped_pos.size(); ++k)
                    if (omega[slices.dip_space.coordinate(d, static_cast<int>(k))] >= alpha.hi)
                        L |= 1U << v.dipped_pos[k];
                wins.push_back(L);
            }
        }
        spec.deciders.push_back({alpha, MonotoneFamily::generated_by(std::move(wins))});
    }

    if (auto bad = validate(spec); !bad.empty())
        return {std::nullopt, "recovered parameters violate " + bad.front().code + ": " + bad.front().detail};
    if (full_outcomes(tabulate(spec)) != full_outcomes(table))
        return {std::nullopt, "recomposed rule differs from the table"};
    return {std::move(spec), {}};
}

}  // namespace spfl
