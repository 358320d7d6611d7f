#pragma once

// Enumeration of every characterized rule on tiny instances, and a random
// generator of valid specifications for round-trip testing.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "spfl/error.hpp"
#include "spfl/rulekernel.hpp"
#include "spfl/table.hpp"

namespace spfl {

struct EnumerationLimits {
    int max_range = 3;
    int max_agents = 4;
};

namespace detail {

/// All upward-closed families of subsets of a local universe of `a`
/// agents, each as a bitset over the 2^a subsets.
inline std::vector<std::uint64_t> all_upsets(int a)
{
    const std::uint32_t subsets = 1U << a;
    if (subsets > 16)
        throw SizeLimitError("too many peaked agents to enumerate coalition families");
    std::vector<std::uint64_t> out;
    for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << subsets); ++fam) {
        bool closed = true;
        for (std::uint32_t s = 0; s < subsets && closed; ++s)
            if (fam >> s & 1U)
                for (int k = 0; k < a && closed; ++k)
                    closed = (fam >> (s | 1U << k) & 1U) != 0;
        if (closed)
            out.push_back(fam);
    }
    return out;
}

/// Antichains drawn from `cands` (in order) that satisfy `accept`.
template <class Accept>
void for_each_antichain(const std::vector<Coalition>& cands, std::size_t from, std::vector<Coalition>& chosen,
                        const Accept& accept)
{
    if (from == cands.size()) {
        accept(chosen);
        return;
    }
    for_each_antichain(cands, from + 1, chosen, accept);
    Coalition c = cands[from];
    bool free = std::none_of(chosen.begin(), chosen.end(),
                             [c](Coalition o) { return is_subset(o, c) || is_subset(c, o); });
    if (free) {
        chosen.push_back(c);
        for_each_antichain(cands, from + 1, chosen, accept);
        chosen.pop_back();
    }
}

/// Every valid W for one pair of a fixed left coalition system.
inline std::vector<MonotoneFamily> decider_options(const RuleSpec& partial, const ExtOrder& order, const ExtElem& alpha)
{
    const Coalition A = partial.roster.peaked_mask();
    const Coalition D = partial.roster.dipped_mask();
    const Coalition N = partial.roster.all_mask();
    const auto& upper = *partial.lcs.family(alpha);
    auto lower = family_at_or_below(partial.lcs, order, ExtElem::alt(alpha.lo));
    auto needed = minimal_of_difference(upper, lower, A);

    std::vector<Coalition> cands;
    for (Coalition c = 1; c <= N; ++c) {
        if (!is_subset(c, N) || (c & D) == 0)
            continue;
        Coalition ca = c & A;
        if (upper.contains(ca) && !lower.contains(ca))
            cands.push_back(c);
    }
    std::vector<MonotoneFamily> out;
    std::vector<Coalition> chosen;
    for_each_antichain(cands, 0, chosen, [&](const std::vector<Coalition>& w) {
        if (w.empty())
            return;
        for (Coalition b : needed)
            if (std::none_of(w.begin(), w.end(), [&](Coalition c) { return (c & A) == b; }))
                return;
        out.push_back(MonotoneFamily::generated_by(w));
    });
    return out;
}

}  // namespace detail

/// Every rule of the characterized family with the given range, validated,
/// range-checked and deduplicated by outcome table. Deterministic order.
inline std::vector<RuleSpec> enumerate_rulespecs(const AlternativeSet& X, const Range& omega, const AgentRoster& roster,
                                                 const EnumerationLimits& limits = {})
{
    if (omega.size() > limits.max_range)
        throw SizeLimitError("enumerate_rulespecs: range of size " + std::to_string(omega.size()) +
                             " exceeds the limit of " + std::to_string(limits.max_range));
    if (roster.n() > limits.max_agents)
        throw SizeLimitError("enumerate_rulespecs: " + std::to_string(roster.n()) + " agents exceed the limit of " +
                             std::to_string(limits.max_agents));
    ExtOrder order(omega);
    const Coalition A = roster.peaked_mask();
    const Coalition D = roster.dipped_mask();
    const int a = static_cast<int>(roster.peaked().size());

    std::vector<RuleSpec> out;
    std::map<std::vector<Alt>, std::size_t> seen;
    auto offer = [&](const RuleSpec& spec) {
        if (!validate(spec).empty())
            return;
        auto t = tabulate(spec);
        if (range_of(t) != omega)
            return;
        if (seen.emplace(t.outcomes, out.size()).second)
            out.push_back(spec);
    };

    // Fill deciders for every pair, then offer.
    auto with_deciders = [&](RuleSpec spec) {
        std::vector<ExtElem> pairs;
        for (const auto& e : spec.lcs.r_omega)
            if (e.is_pair())
                pairs.push_back(e);
        std::vector<std::vector<MonotoneFamily>> options;
        for (const auto& p : pairs) {
            options.push_back(detail::decider_options(spec, order, p));
            if (options.back().empty())
                return;
        }
        std::vector<std::size_t> pick(pairs.size(), 0);
        for (;;) {
            spec.deciders.clear();
            for (std::size_t k = 0; k < pairs.size(); ++k)
                spec.deciders.push_back({pairs[k], options[k][pick[k]]});
            offer(spec);
            std::size_t k = pairs.size();
            while (k-- > 0) {
                if (++pick[k] < options[k].size())
                    break;
                pick[k] = 0;
            }
            if (k == static_cast<std::size_t>(-1))
                break;
        }
    };

    if (A == 0) {
        for (const auto& e : order.elements()) {
            if (e.is_pair() && D == 0)
                continue;
            RuleSpec spec{X, roster, omega, {{e}, {MonotoneFamily::generated_by({0})}}, {}, e};
            with_deciders(spec);
        }
        return out;
    }

    // r_omega = interior + optional endpoints + optional pairs.
    std::vector<ExtElem> optional_elems;
    if (omega.size() >= 1)
        optional_elems.push_back(ExtElem::alt(omega.min()));
    if (omega.size() >= 2)
        optional_elems.push_back(ExtElem::alt(omega.max()));
    if (D != 0)
        for (const auto& p : contiguous_pairs(omega))
            optional_elems.push_back(p);
    auto inner = interior(omega);

    auto upsets = detail::all_upsets(a);
    const std::uint32_t subsets = 1U << a;
    auto to_family = [&](std::uint64_t bits) {
        std::vector<Coalition> gens;
        for (std::uint32_t s = 0; s < subsets; ++s)
            if (bits >> s & 1U) {
                Coalition c = 0;
                for (int k = 0; k < a; ++k)
                    if (s >> k & 1U)
                        c |= 1U << (roster.peaked()[static_cast<std::size_t>(k)] - 1);
                gens.push_back(c);
            }
        return MonotoneFamily::generated_by(std::move(gens));
    };
    const std::uint64_t full_set_bit = std::uint64_t{1} << (subsets - 1);

    for (std::uint32_t choice = 0; choice < (1U << optional_elems.size()); ++choice) {
        std::vector<ExtElem> r;
        for (Alt x : inner)
            r.push_back(ExtElem::alt(x));
        for (std::size_t k = 0; k < optional_elems.size(); ++k)
            if (choice >> k & 1U)
                r.push_back(optional_elems[k]);
        if (r.empty())
            continue;
        std::sort(r.begin(), r.end(), [&](const ExtElem& x, const ExtElem& y) { return order.less_star(x, y); });
        if (r.size() > 1 && omega.size() == 1)
            continue;
        const bool max_in = r.back() == ExtElem::alt(omega.max());

        // nested chains of up-sets, one per element
        std::vector<std::uint64_t> chain(r.size());
        auto rec = [&](auto&& self, std::size_t k) -> void {
            if (k == r.size()) {
                RuleSpec spec{X, roster, omega, {r, {}}, {}, std::nullopt};
                for (auto bits : chain)
                    spec.lcs.families.push_back(to_family(bits));
                with_deciders(std::move(spec));
                return;
            }
            const bool last = k + 1 == r.size();
            for (auto fam : upsets) {
                if (k > 0 && (chain[k - 1] & ~fam) != 0)
                    continue;
                bool has_empty = (fam & 1U) != 0;
                if (has_empty != (!max_in && last))
                    continue;
                if (last && !(fam & full_set_bit))
                    continue;
                chain[k] = fam;
                self(self, k + 1);
            }
        };
        rec(rec, 0);
    }
    return out;
}

/// Random valid specification with exactly the given range, by rejection:
/// candidates that fail validation or miss part of the range are redrawn.
/// Without peaked agents the range must have one or two points.
template <class Rng>
RuleSpec random_rulespec(const AlternativeSet& X, const Range& omega, const AgentRoster& roster, Rng& rng)
{
    const Coalition A = roster.peaked_mask();
    const Coalition D = roster.dipped_mask();
    ExtOrder order(omega);
    auto coin = [&] { return std::uniform_int_distribution<int>(0, 1)(rng) == 1; };
    auto random_subset = [&](Coalition universe) {
        Coalition c = 0;
        for (int i = 0; i < 32; ++i)
            if ((universe >> i & 1U) && coin())
                c |= 1U << i;
        return c;
    };
    auto random_nonempty = [&](Coalition universe) {
        Coalition c = 0;
        while (c == 0)
            c = random_subset(universe);
        return c;
    };

    for (int attempt = 0; attempt < 1000; ++attempt) {
        RuleSpec spec{X, roster, omega, {}, {}, std::nullopt};
        if (A == 0) {
            if (omega.size() > 2 || (omega.size() == 2 && D == 0))
                throw ValidationError("without peaked agents the range has at most two points (two need dipped agents)");
            ExtElem e = omega.size() == 1 ? ExtElem::alt(omega.min()) : ExtElem::pair(omega.min(), omega.max());
            spec.omega_empty = e;
            spec.lcs = {{e}, {MonotoneFamily::generated_by({0})}};
        } else {
            std::vector<ExtElem> r;
            for (const auto& e : order.elements()) {
                bool endpoint = e.is_alt() && (e.lo == omega.min() || e.lo == omega.max());
                if (e.is_alt() && !endpoint)
                    r.push_back(e);
                else if (e.is_pair() ? (D != 0 && coin()) : coin())
                    r.push_back(e);
            }
            if (r.empty())
                continue;
            const bool max_in = r.back() == ExtElem::alt(omega.max());
            MonotoneFamily fam;
            for (std::size_t k = 0; k < r.size(); ++k) {
                if (k + 1 == r.size() && !max_in) {
                    fam = MonotoneFamily::generated_by({0});
                } else {
                    std::vector<Coalition> fresh;
                    for (Coalition c = 1; c <= A; ++c)
                        if (is_subset(c, A) && !fam.contains(c))
                            fresh.push_back(c);
                    // pairs must grow the family to be reachable; alternatives may not
                    int adds = std::uniform_int_distribution<int>(r[k].is_pair() ? 1 : 0, 2)(rng);
                    for (int t = 0; t < adds && !fresh.empty(); ++t)
                        fam = fam.join(MonotoneFamily::generated_by(
                            {fresh[std::uniform_int_distribution<std::size_t>(0, fresh.size() - 1)(rng)]}));
                }
                spec.lcs.r_omega.push_back(r[k]);
                spec.lcs.families.push_back(fam);
            }
        }
        for (const auto& alpha : spec.lcs.r_omega) {
            if (!alpha.is_pair())
                continue;
            const auto& upper = *spec.lcs.family(alpha);
            auto lower = family_at_or_below(spec.lcs, order, ExtElem::alt(alpha.lo));
            auto needed = minimal_of_difference(upper, lower, A);
            std::vector<Coalition> w;
            for (Coalition b : needed)
                w.push_back(b | random_nonempty(D));
            int extra = needed.empty() ? 0 : std::uniform_int_distribution<int>(0, 2)(rng);
            for (int t = 0; t < extra; ++t) {
                Coalition b = needed[std::uniform_int_distribution<std::size_t>(0, needed.size() - 1)(rng)];
                Coalition ca = b | random_subset(A & ~b);
                if (!lower.contains(ca))
                    w.push_back(ca | random_nonempty(D));
            }
            spec.deciders.push_back({alpha, MonotoneFamily::generated_by(std::move(w))});
        }
        if (validate(spec).empty() && range_matches(spec))
            return spec;
    }
    throw std::runtime_error("random_rulespec: could not build a valid rule for this instance");
}

}  // namespace spfl
