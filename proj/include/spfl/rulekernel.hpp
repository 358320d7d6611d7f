#pragma once

// Two-step rules: a generalized median voter function over the range and
// its contiguous pairs, followed (when it lands on a pair) by voting by
// collections of left-decisive sets.

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spfl/coalition.hpp"
#include "spfl/extorder.hpp"
#include "spfl/prefdomain.hpp"

namespace spfl {

/// One winning-coalition family per element of r_omega (same order).
struct LeftCoalitionSystem {
    std::vector<ExtElem> r_omega;
    std::vector<MonotoneFamily> families;

    const MonotoneFamily* family(const ExtElem& e) const
    {
        auto it = std::find(r_omega.begin(), r_omega.end(), e);
        if (it == r_omega.end())
            return nullptr;
        return &families[static_cast<std::size_t>(it - r_omega.begin())];
    }

    bool operator==(const LeftCoalitionSystem&) const = default;
};

/// Left-decisive sets for one contiguous pair.
struct LeftDecisiveFamily {
    ExtElem pair;
    MonotoneFamily winning;

    bool operator==(const LeftDecisiveFamily&) const = default;
};

struct RuleSpec {
    AlternativeSet X;
    AgentRoster roster;
    Range omega;
    LeftCoalitionSystem lcs;
    std::vector<LeftDecisiveFamily> deciders;
    /// First-step outcome when there are no peaked agents.
    std::optional<ExtElem> omega_empty;

    const LeftDecisiveFamily* decider(const ExtElem& pair) const
    {
        for (const auto& d : deciders)
            if (d.pair == pair)
                return &d;
        return nullptr;
    }
};

/// "2" for an alternative, "2-3" for a pair (locations, not indices).
inline std::string elem_key(const AlternativeSet& X, const ExtElem& e)
{
    if (e.is_alt())
        return to_string(X[e.lo]);
    return to_string(X[e.lo]) + "-" + to_string(X[e.hi]);
}

struct Violation {
    std::string code;
    std::string detail;
};

/// Family of the greatest r_omega element at or below `at` (empty
/// family when there is none). For members of r_omega this is the family
/// itself; for the left end of a pair outside r_omega it is what the
/// nestedness chain implies.
inline MonotoneFamily family_at_or_below(const LeftCoalitionSystem& lcs, const ExtOrder& order, const ExtElem& at)
{
    int limit = order.position(at);
    const MonotoneFamily* best = nullptr;
    int best_pos = -1;
    for (std::size_t k = 0; k < lcs.r_omega.size(); ++k) {
        int p = order.position(lcs.r_omega[k]);
        if (p <= limit && p > best_pos) {
            best = &lcs.families[k];
            best_pos = p;
        }
    }
    return best ? *best : MonotoneFamily{};
}

/// Minimal members (inside `universe`) of upper \ lower.
inline std::vector<Coalition> minimal_of_difference(const MonotoneFamily& upper, const MonotoneFamily& lower,
                                                    Coalition universe)
{
    std::vector<Coalition> diff;
    for (Coalition c : upper.members(universe))
        if (!lower.contains(c))
            diff.push_back(c);
    return MonotoneFamily::minimize(std::move(diff));
}

/// Checks the left coalition system against the range: r_omega sits
/// between int(range) and range + contiguous pairs, families are
/// antichains over the peaked agents, nested along <*, the endpoint
/// condition holds and the largest element accepts the whole peaked set.
/// The "no maximum" condition of countable ranges is vacuous here.
inline std::vector<Violation> validate_lcs(const AlternativeSet& X, const LeftCoalitionSystem& lcs,
                                           const AgentRoster& roster, const Range& omega)
{
    std::vector<Violation> out;
    ExtOrder order(omega);
    const Coalition A = roster.peaked_mask();
    auto key = [&](const ExtElem& e) { return elem_key(X, e); };

    if (lcs.r_omega.empty()) {
        out.push_back({"lcs.elements", "r_omega is empty"});
        return out;
    }
    if (lcs.families.size() != lcs.r_omega.size()) {
        out.push_back({"lcs.elements", "r_omega has " + std::to_string(lcs.r_omega.size()) + " elements but " +
                                           std::to_string(lcs.families.size()) + " families were given"});
        return out;
    }
    for (const auto& e : lcs.r_omega) {
        if (e.lo < 0 || e.hi < 0 || e.lo >= X.size() || e.hi >= X.size() || !order.contains(e)) {
            out.push_back({"lcs.elements", "element " + (e.lo >= 0 && e.hi >= 0 && e.lo < X.size() &&
                                                                 e.hi < X.size()
                                                             ? key(e)
                                                             : ExtOrder::describe(e)) +
                                               " is neither a range alternative nor a contiguous pair"});
            return out;
        }
    }
    for (std::size_t k = 1; k < lcs.r_omega.size(); ++k)
        if (!order.less_star(lcs.r_omega[k - 1], lcs.r_omega[k])) {
            out.push_back({"lcs.elements", "r_omega must be listed strictly increasing in <* (at " +
                                               key(lcs.r_omega[k]) + ")"});
            return out;
        }
    for (Alt x : interior(omega))
        if (lcs.family(ExtElem::alt(x)) == nullptr)
            out.push_back({"lcs.interior", "interior alternative " + to_string(X[x]) + " missing from r_omega"});

    for (std::size_t k = 0; k < lcs.r_omega.size(); ++k) {
        const auto& fam = lcs.families[k];
        for (Coalition c : fam.minimal())
            if (!is_subset(c, A))
                out.push_back({"lcs.families", "L(" + key(lcs.r_omega[k]) + ") has coalition " +
                                                   describe_coalition(c) + " with non-peaked agents"});
        if (!fam.is_antichain())
            out.push_back({"lcs.monotone", "L(" + key(lcs.r_omega[k]) + ") is not listed by minimal coalitions"});
    }

    // Nestedness: consecutive inclusion implies the whole chain.
    for (std::size_t k = 1; k < lcs.r_omega.size(); ++k) {
        const auto& lo = lcs.families[k - 1];
        const auto& hi = lcs.families[k];
        for (Coalition c : lo.minimal())
            if (!hi.contains(c))
                out.push_back({"lcs.nested", "coalition " + describe_coalition(c) + " is in L(" +
                                                 key(lcs.r_omega[k - 1]) + ") but not in L(" + key(lcs.r_omega[k]) +
                                                 ")"});
    }

    if (A != 0) {
        const std::size_t last = lcs.r_omega.size() - 1;
        const bool max_in = lcs.r_omega.back() == ExtElem::alt(omega.max());
        if (!max_in && !lcs.families[last].contains(0))
            out.push_back({"lcs.endpoint", "max of the range is not in r_omega, so the empty coalition must be in L(" +
                                               key(lcs.r_omega[last]) + ")"});
        for (std::size_t k = 0; k < lcs.r_omega.size(); ++k) {
            if (!max_in && k == last)
                continue;
            if (lcs.families[k].contains(0))
                out.push_back({"lcs.endpoint", "empty coalition must not be in L(" + key(lcs.r_omega[k]) + ")"});
        }
        if (!lcs.families[last].contains(A))
            out.push_back({"lcs.total", "the full peaked set must be in L(" + key(lcs.r_omega[last]) + ")"});
    }
    return out;
}

/// Full structural check of a rule specification. The declared-range
/// check (attained range equals omega) lives in verify.
inline std::vector<Violation> validate(const RuleSpec& spec)
{
    std::vector<Violation> out;
    const auto& X = spec.X;
    if (spec.omega.universe() != X.size()) {
        out.push_back({"rule.omega", "range is defined over a different alternative set"});
        return out;
    }
    const Coalition A = spec.roster.peaked_mask();
    const Coalition D = spec.roster.dipped_mask();
    const Coalition N = spec.roster.all_mask();
    ExtOrder order(spec.omega);
    auto key = [&](const ExtElem& e) { return elem_key(X, e); };

    if (A == 0) {
        if (!spec.omega_empty) {
            out.push_back({"rule.omega-empty", "without peaked agents the first-step outcome must be given"});
            return out;
        }
        if (!order.contains(*spec.omega_empty)) {
            out.push_back({"rule.omega-empty", "first-step outcome is not in the extended range"});
            return out;
        }
        if (spec.lcs.r_omega != std::vector<ExtElem>{*spec.omega_empty} ||
            spec.lcs.families != std::vector<MonotoneFamily>{MonotoneFamily::generated_by({0})}) {
            out.push_back({"rule.omega-empty", "without peaked agents r_omega must be exactly the fixed outcome"});
            return out;
        }
    } else {
        if (spec.omega_empty)
            out.push_back({"rule.omega-empty", "a fixed first-step outcome is only allowed without peaked agents"});
        auto lv = validate_lcs(X, spec.lcs, spec.roster, spec.omega);
        out.insert(out.end(), lv.begin(), lv.end());
        if (!lv.empty())
            return out;
    }

    for (const auto& d : spec.deciders)
        if (!d.pair.is_pair() || std::find(spec.lcs.r_omega.begin(), spec.lcs.r_omega.end(), d.pair) ==
                                     spec.lcs.r_omega.end()) {
            out.push_back({"decider.unexpected", "decider given for " +
                                                     (order.contains(d.pair) ? key(d.pair) : ExtOrder::describe(d.pair)) +
                                                     ", which is not a pair of r_omega"});
        }
    for (std::size_t k = 0; k < spec.lcs.r_omega.size(); ++k) {
        const ExtElem& alpha = spec.lcs.r_omega[k];
        if (!alpha.is_pair())
            continue;
        if (D == 0) {
            out.push_back({"rule.dipped-pairs", "pair " + key(alpha) + " in r_omega but there are no dipped agents"});
            continue;
        }
        long count = std::count_if(spec.deciders.begin(), spec.deciders.end(),
                                   [&](const LeftDecisiveFamily& d) { return d.pair == alpha; });
        if (count != 1) {
            out.push_back({"decider.missing", "pair " + key(alpha) + " needs exactly one decider, found " +
                                                  std::to_string(count)});
            continue;
        }
        const auto& W = spec.decider(alpha)->winning;
        const auto& upper = spec.lcs.families[k];
        auto lower = family_at_or_below(spec.lcs, order, ExtElem::alt(alpha.lo));
        if (!W.is_antichain())
            out.push_back({"decider.antichain", "W(" + key(alpha) + ") is not listed by minimal coalitions"});
        for (Coalition c : W.minimal()) {
            if (!is_subset(c, N))
                out.push_back({"decider.agents", "W(" + key(alpha) + ") coalition " + describe_coalition(c) +
                                                     " names unknown agents"});
            if ((c & D) == 0)
                out.push_back({"decider.dipped-member", "W(" + key(alpha) + ") coalition " + describe_coalition(c) +
                                                            " has no dipped agent"});
            Coalition ca = c & A;
            if (!upper.contains(ca) || lower.contains(ca))
                out.push_back({"decider.canonical", "W(" + key(alpha) + ") coalition " + describe_coalition(c) +
                                                        " has a peaked part outside L(" + key(alpha) + ") \\ L(" +
                                                        to_string(X[alpha.lo]) + ")"});
        }
        for (Coalition b : minimal_of_difference(upper, lower, A)) {
            bool covered = std::any_of(W.minimal().begin(), W.minimal().end(),
                                       [&](Coalition c) { return (c & A) == b; });
            if (!covered)
                out.push_back({"decider.coverage", "no coalition of W(" + key(alpha) + ") has peaked part " +
                                                       describe_coalition(b)});
        }
    }
    return out;
}

/// Agents preferring l to r, read off restricted peaks/dips: a peaked
/// agent does iff her restricted peak is <= l, a dipped agent iff her
/// restricted dip is >= r (nothing of the range lies strictly between).
inline Coalition left_preferrers(const AgentRoster& roster, const RestrictedProfile& rp, Alt l, Alt r)
{
    Coalition L = 0;
    for (std::size_t i = 0; i < roster.peaked().size(); ++i)
        if (rp.peaks[i] <= l)
            L |= 1U << (roster.peaked()[i] - 1);
    for (std::size_t j = 0; j < roster.dipped().size(); ++j)
        if (rp.dips[j] >= r)
            L |= 1U << (roster.dipped()[j] - 1);
    return L;
}

/// Precomputed view of a validated spec for repeated evaluation.
/// Profiles are passed per agent position: restricted peak for peaked
/// agents, restricted dip for dipped agents.
class CompiledRule {
public:
    explicit CompiledRule(RuleSpec spec) : spec_(std::move(spec)), order_(spec_.omega)
    {
        for (const auto& e : spec_.lcs.r_omega)
            positions_.push_back(order_.position(e));
        for (const auto& e : spec_.lcs.r_omega) {
            const LeftDecisiveFamily* d = e.is_pair() ? spec_.decider(e) : nullptr;
            if (e.is_pair() && d == nullptr)
                throw ValidationError("missing decider for pair " + elem_key(spec_.X, e));
            decider_idx_.push_back(d ? static_cast<int>(d - spec_.deciders.data()) : -1);
        }
        for (int i = 0; i < spec_.roster.n(); ++i)
            (spec_.roster.kind_at(i) == PrefKind::Peaked ? peaked_pos_ : dipped_pos_).push_back(i);
    }

    const RuleSpec& spec() const { return spec_; }
    const ExtOrder& order() const { return order_; }

    /// Index into r_omega of the first-step outcome.
    std::size_t first_step_index(std::span<const Alt> by_agent) const
    {
        for (std::size_t k = 0; k < positions_.size(); ++k) {
            Coalition left = 0;
            for (int i : peaked_pos_)
                if (order_.alt_position(by_agent[static_cast<std::size_t>(i)]) <= positions_[k])
                    left |= 1U << i;
            if (spec_.lcs.families[k].contains(left))
                return k;
        }
        throw std::logic_error("generalized median voter function selected nothing; "
                               "the largest element must accept every coalition of peaked agents");
    }

    ExtElem first_step(std::span<const Alt> by_agent) const { return spec_.lcs.r_omega[first_step_index(by_agent)]; }

    Alt second_step(std::size_t k, std::span<const Alt> by_agent) const
    {
        const ExtElem& e = spec_.lcs.r_omega[k];
        Coalition L = 0;
        for (int i : peaked_pos_)
            if (by_agent[static_cast<std::size_t>(i)] <= e.lo)
                L |= 1U << i;
        for (int j : dipped_pos_)
            if (by_agent[static_cast<std::size_t>(j)] >= e.hi)
                L |= 1U << j;
        return spec_.deciders[static_cast<std::size_t>(decider_idx_[k])].winning.contains(L) ? e.lo : e.hi;
    }

    Alt operator()(std::span<const Alt> by_agent) const
    {
        std::size_t k = first_step_index(by_agent);
        const ExtElem& e = spec_.lcs.r_omega[k];
        return e.is_alt() ? e.lo : second_step(k, by_agent);
    }

    std::vector<Alt> by_agent(const RestrictedProfile& rp) const
    {
        check_restricted(rp, spec_.roster, spec_.omega);
        std::vector<Alt> v(static_cast<std::size_t>(spec_.roster.n()));
        for (std::size_t i = 0; i < rp.peaks.size(); ++i)
            v[static_cast<std::size_t>(spec_.roster.peaked()[i] - 1)] = rp.peaks[i];
        for (std::size_t j = 0; j < rp.dips.size(); ++j)
            v[static_cast<std::size_t>(spec_.roster.dipped()[j] - 1)] = rp.dips[j];
        return v;
    }

private:
    RuleSpec spec_;
    ExtOrder order_;
    std::vector<int> positions_;
    std::vector<int> decider_idx_;
    std::vector<int> peaked_pos_;
    std::vector<int> dipped_pos_;
};

/// First <*-element of r_omega whose left-set of peaks is winning.
inline ExtElem gmvf(const RuleSpec& spec, const std::vector<Alt>& peaks)
{
    CompiledRule rule(spec);
    RestrictedProfile rp{peaks, std::vector<Alt>(spec.roster.dipped().size(), spec.omega.min())};
    return rule.first_step(rule.by_agent(rp));
}

/// Second step for a profile whose first step lands on decider.pair.
inline Alt binary_decide(const RuleSpec& spec, const LeftDecisiveFamily& decider, const RestrictedProfile& rp)
{
    check_restricted(rp, spec.roster, spec.omega);
    if (gmvf(spec, rp.peaks) != decider.pair)
        throw ValidationError("binary_decide: first step does not select this pair");
    Coalition L = left_preferrers(spec.roster, rp, decider.pair.lo, decider.pair.hi);
    return decider.winning.contains(L) ? decider.pair.lo : decider.pair.hi;
}

inline Alt evaluate(const RuleSpec& spec, const RestrictedProfile& rp)
{
    CompiledRule rule(spec);
    return rule(rule.by_agent(rp));
}

inline Alt evaluate_full(const RuleSpec& spec, const Profile& profile)
{
    check_profile(profile, spec.roster, spec.X.size());
    return evaluate(spec, restrict_profile(profile, spec.roster, spec.omega));
}

}  // namespace spfl
