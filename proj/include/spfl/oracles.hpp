#pragma once

// Brute-force incentive and efficiency oracles over full preference
// profiles. Searches are lexicographic in the true profile; the reported
// witness is the first one in that order regardless of the job count.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "spfl/table.hpp"

namespace spfl {

struct ManipulationWitness {
    Profile profile;
    Coalition deviators = 0;
    /// Replacement preferences, one per deviator in increasing id order.
    std::vector<Preference> deviation;
    Alt before = 0;
    Alt after = 0;
};

struct ParetoWitness {
    Profile profile;
    Alt chosen = 0;
    Alt dominating = 0;
};

namespace detail {

inline unsigned resolve_jobs(unsigned jobs)
{
    if (jobs == 0)
        jobs = std::max(1U, std::thread::hardware_concurrency());
    return jobs;
}

/// Runs scan(lo, hi) over [0, size) in chunks and returns the smallest
/// index any chunk reported. scan must return the first hit in its chunk.
template <class Scan>
std::optional<std::uint64_t> parallel_first(std::uint64_t size, unsigned jobs, Scan scan)
{
    jobs = resolve_jobs(jobs);
    constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
    if (jobs == 1 || size < 4096) {
        auto r = scan(std::uint64_t{0}, size);
        return r;
    }
    const std::uint64_t chunk = std::max<std::uint64_t>(1024, size / (jobs * 8ULL));
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> best{none};
    auto worker = [&] {
        for (;;) {
            std::uint64_t lo = next.fetch_add(chunk);
            if (lo >= size || lo > best.load())
                return;
            std::uint64_t hi = std::min(size, lo + chunk);
            if (auto hit = scan(lo, hi)) {
                std::uint64_t cur = best.load();
                while (*hit < cur && !best.compare_exchange_weak(cur, *hit)) {
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (best.load() == none)
        return std::nullopt;
    return best.load();
}

/// Everything the oracles need about a table, laid out over full profiles.
struct FullView {
    const AlternativeSet* X;
    const AgentRoster* roster;
    Domains dom;
    ProfileSpace space;
    std::vector<Alt> outcomes;

    explicit FullView(const RuleTable& t)
        : X(&t.X), roster(&t.roster), dom(t.X.size()), space(full_space(t.X.size(), t.roster)),
          outcomes(full_outcomes(t))
    {
    }

    const Preference& pref(int agent, int coord) const
    {
        return dom.of(roster->kind_at(agent))[static_cast<std::size_t>(coord)];
    }

    Profile profile_at(std::uint64_t idx) const
    {
        Profile p;
        for (int i = 0; i < space.agents(); ++i)
            p.push_back(pref(i, space.coordinate(idx, i)));
        return p;
    }
};

}  // namespace detail

/// First unilateral manipulation, or nullopt if the rule is strategy-proof.
/// Deviations keep the agent's kind.
inline std::optional<ManipulationWitness> is_strategy_proof(const RuleTable& table, unsigned jobs = 0)
{
    detail::FullView v(table);
    const int n = v.space.agents();

    auto first_dev = [&](std::uint64_t idx) -> std::optional<std::pair<int, int>> {
        Alt y = v.outcomes[idx];
        for (int i = 0; i < n; ++i) {
            int cur = v.space.coordinate(idx, i);
            const Preference& truth = v.pref(i, cur);
            std::uint64_t base = idx - static_cast<std::uint64_t>(cur) * v.space.stride(i);
            for (int w = 0; w < v.space.radix(i); ++w) {
                if (w == cur)
                    continue;
                Alt x = v.outcomes[base + static_cast<std::uint64_t>(w) * v.space.stride(i)];
                if (x != y && truth.strictly_prefers(x, y))
                    return std::pair{i, w};
            }
        }
        return std::nullopt;
    };

    auto hit = detail::parallel_first(v.space.size(), jobs, [&](std::uint64_t lo, std::uint64_t hi) -> std::optional<std::uint64_t> {
        for (std::uint64_t idx = lo; idx < hi; ++idx)
            if (first_dev(idx))
                return idx;
        return std::nullopt;
    });
    if (!hit)
        return std::nullopt;

    auto [agent, w] = *first_dev(*hit);
    ManipulationWitness wit;
    wit.profile = v.profile_at(*hit);
    wit.deviators = 1U << agent;
    wit.deviation.push_back(v.pref(agent, w));
    wit.before = v.outcomes[*hit];
    int cur = v.space.coordinate(*hit, agent);
    wit.after = v.outcomes[*hit + (static_cast<std::uint64_t>(w) - static_cast<std::uint64_t>(cur)) * v.space.stride(agent)];
    return wit;
}

/// First coalitional manipulation, or nullopt if the rule is group
/// strategy-proof.
///
/// For each coalition S and each fixed report of the others, the set of
/// outcomes S can force is precomputed (one bitmask per slice, built from
/// S minus one agent). A profile R admits a manipulation towards x iff x
/// is forcible by the agents that strictly prefer x to f(R): any smaller
/// manipulating group can be padded with truthful members.
inline std::optional<ManipulationWitness> is_group_strategy_proof(const RuleTable& table, unsigned jobs = 0)
{
    detail::FullView v(table);
    const int n = v.space.agents();
    const int m = table.X.size();
    if (m > 32)
        throw SizeLimitError("group strategy-proofness check supports at most 32 alternatives");
    if (n == 0)
        return std::nullopt;
    const std::uint32_t masks = 1U << n;

    // strides of the "others" coordinates for every coalition
    std::vector<std::vector<std::uint64_t>> strides(masks, std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
    std::vector<std::uint64_t> sizes(masks), offsets(masks);
    std::uint64_t total = 0;
    for (std::uint32_t S = 0; S < masks; ++S) {
        std::uint64_t s = 1;
        for (int i = n; i-- > 0;)
            if (!(S >> i & 1U)) {
                strides[S][static_cast<std::size_t>(i)] = s;
                s *= static_cast<std::uint64_t>(v.space.radix(i));
            }
        sizes[S] = s;
        offsets[S] = total;
        total += s;
        if (total > (std::uint64_t{1} << 26))
            throw SizeLimitError("coalition slices exceed the memory guard");
    }
    std::vector<std::uint32_t> reach(total, 0);
    for (std::uint64_t idx = 0; idx < v.space.size(); ++idx)
        reach[idx] = 1U << v.outcomes[idx];
    std::vector<int> c(static_cast<std::size_t>(n));
    for (std::uint32_t S = 1; S < masks; ++S) {
        int i = 31 - std::countl_zero(S);
        std::uint32_t sub = S & ~(1U << i);
        std::fill(c.begin(), c.end(), 0);
        for (std::uint64_t key = 0; key < sizes[S]; ++key) {
            // c holds the coordinates of agents outside S, odometer order
            std::uint64_t base = 0;
            for (int j = 0; j < n; ++j)
                if (!(S >> j & 1U))
                    base += static_cast<std::uint64_t>(c[static_cast<std::size_t>(j)]) * strides[sub][static_cast<std::size_t>(j)];
            std::uint32_t acc = 0;
            for (int w = 0; w < v.space.radix(i); ++w)
                acc |= reach[offsets[sub] + base + static_cast<std::uint64_t>(w) * strides[sub][static_cast<std::size_t>(i)]];
            reach[offsets[S] + key] = acc;
            for (int j = n; j-- > 0;) {
                if (S >> j & 1U)
                    continue;
                if (++c[static_cast<std::size_t>(j)] < v.space.radix(j))
                    break;
                c[static_cast<std::size_t>(j)] = 0;
            }
        }
    }

    auto first_target = [&](std::uint64_t idx) -> std::optional<std::pair<Alt, std::uint32_t>> {
        Alt y = v.outcomes[idx];
        for (Alt x = 0; x < m; ++x) {
            if (x == y)
                continue;
            std::uint32_t S = 0;
            for (int i = 0; i < n; ++i)
                if (v.pref(i, v.space.coordinate(idx, i)).strictly_prefers(x, y))
                    S |= 1U << i;
            if (S == 0)
                continue;
            std::uint64_t key = 0;
            for (int j = 0; j < n; ++j)
                if (!(S >> j & 1U))
                    key += static_cast<std::uint64_t>(v.space.coordinate(idx, j)) * strides[S][static_cast<std::size_t>(j)];
            if (reach[offsets[S] + key] >> x & 1U)
                return std::pair{x, S};
        }
        return std::nullopt;
    };

    auto hit = detail::parallel_first(v.space.size(), jobs, [&](std::uint64_t lo, std::uint64_t hi) -> std::optional<std::uint64_t> {
        for (std::uint64_t idx = lo; idx < hi; ++idx)
            if (first_target(idx))
                return idx;
        return std::nullopt;
    });
    if (!hit)
        return std::nullopt;

    auto [x, S] = *first_target(*hit);
    // Recover the joint deviation: lexicographically first report of S reaching x.
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
        if (S >> i & 1U)
            members.push_back(i);
    std::vector<int> dev(members.size(), 0);
    for (;;) {
        std::uint64_t idx = *hit;
        for (std::size_t k = 0; k < members.size(); ++k) {
            int i = members[k];
            idx -= static_cast<std::uint64_t>(v.space.coordinate(*hit, i)) * v.space.stride(i);
            idx += static_cast<std::uint64_t>(dev[k]) * v.space.stride(i);
        }
        if (v.outcomes[idx] == x) {
            ManipulationWitness wit;
            wit.profile = v.profile_at(*hit);
            wit.deviators = S;
            for (std::size_t k = 0; k < members.size(); ++k)
                wit.deviation.push_back(v.pref(members[k], dev[k]));
            wit.before = v.outcomes[*hit];
            wit.after = x;
            return wit;
        }
        std::size_t k = members.size();
        while (k-- > 0) {
            if (++dev[k] < v.space.radix(members[k]))
                break;
            dev[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1))
            break;
    }
    throw std::logic_error("group manipulation detected but no deviation reproduces it");
}

/// First profile at which some alternative is strictly preferred by every
/// agent to the chosen one, or nullopt if the rule is Pareto efficient.
inline std::optional<ParetoWitness> is_pareto_efficient(const RuleTable& table, unsigned jobs = 0)
{
    detail::FullView v(table);
    const int n = v.space.agents();
    const int m = table.X.size();

    auto dominator = [&](std::uint64_t idx) -> std::optional<Alt> {
        Alt y = v.outcomes[idx];
        for (Alt x = 0; x < m; ++x) {
            if (x == y)
                continue;
            bool all = true;
            for (int i = 0; i < n && all; ++i)
                all = v.pref(i, v.space.coordinate(idx, i)).strictly_prefers(x, y);
            if (all)
                return x;
        }
        return std::nullopt;
    };

    auto hit = detail::parallel_first(v.space.size(), jobs, [&](std::uint64_t lo, std::uint64_t hi) -> std::optional<std::uint64_t> {
        for (std::uint64_t idx = lo; idx < hi; ++idx)
            if (dominator(idx))
                return idx;
        return std::nullopt;
    });
    if (!hit)
        return std::nullopt;
    return ParetoWitness{v.profile_at(*hit), v.outcomes[*hit], *dominator(*hit)};
}

}  // namespace spfl
