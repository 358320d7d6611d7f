#pragma once

// Single-peaked and single-dipped strict preferences over a finite line,
// the agent roster, and restricted peaks/dips.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "spfl/error.hpp"
#include "spfl/range.hpp"

namespace spfl {

enum class PrefKind : std::uint8_t { Peaked, Dipped };

inline const char* to_string(PrefKind k) { return k == PrefKind::Peaked ? "peaked" : "dipped"; }

namespace detail {

inline void check_permutation(const std::vector<Alt>& ranking, int m)
{
    if (static_cast<int>(ranking.size()) != m)
        throw ValidationError("ranking has " + std::to_string(ranking.size()) + " entries, expected " +
                              std::to_string(m));
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    for (Alt x : ranking) {
        if (x < 0 || x >= m)
            throw ValidationError("ranking entry " + std::to_string(x) + " out of range");
        if (seen[static_cast<std::size_t>(x)])
            throw ValidationError("ranking lists alternative " + std::to_string(x) + " twice");
        seen[static_cast<std::size_t>(x)] = true;
    }
}

inline std::vector<int> positions(const std::vector<Alt>& ranking)
{
    std::vector<int> pos(ranking.size());
    for (std::size_t r = 0; r < ranking.size(); ++r)
        pos[static_cast<std::size_t>(ranking[r])] = static_cast<int>(r);
    return pos;
}

}  // namespace detail

/// True iff ranking (best first) has a peak with strictly decreasing
/// desirability on both sides of it.
inline bool is_single_peaked(const std::vector<Alt>& ranking, int m)
{
    detail::check_permutation(ranking, m);
    auto pos = detail::positions(ranking);
    Alt peak = ranking.front();
    for (Alt x = peak; x + 1 < m; ++x)
        if (pos[static_cast<std::size_t>(x)] > pos[static_cast<std::size_t>(x + 1)])
            return false;
    for (Alt x = peak; x > 0; --x)
        if (pos[static_cast<std::size_t>(x)] > pos[static_cast<std::size_t>(x - 1)])
            return false;
    return true;
}

inline bool is_single_dipped(const std::vector<Alt>& ranking, int m)
{
    detail::check_permutation(ranking, m);
    return is_single_peaked(std::vector<Alt>(ranking.rbegin(), ranking.rend()), m);
}

/// Strict total order over the alternatives together with the kind of
/// its agent. Immutable once built.
class Preference {
public:
    Preference() = default;

    Preference(PrefKind kind, std::vector<Alt> ranking) : kind_(kind), ranking_(std::move(ranking))
    {
        int m = static_cast<int>(ranking_.size());
        if (m == 0)
            throw ValidationError("empty ranking");
        bool ok = kind_ == PrefKind::Peaked ? is_single_peaked(ranking_, m) : is_single_dipped(ranking_, m);
        if (!ok)
            throw ValidationError(std::string("ranking is not ") +
                                  (kind_ == PrefKind::Peaked ? "single-peaked" : "single-dipped"));
        pos_ = detail::positions(ranking_);
    }

    PrefKind kind() const { return kind_; }
    const std::vector<Alt>& ranking() const { return ranking_; }
    int size() const { return static_cast<int>(ranking_.size()); }

    Alt peak() const
    {
        if (kind_ != PrefKind::Peaked)
            throw ValidationError("dipped preference has no peak");
        return ranking_.front();
    }

    Alt dip() const
    {
        if (kind_ != PrefKind::Dipped)
            throw ValidationError("peaked preference has no dip");
        return ranking_.back();
    }

    /// Position in the ranking, 0 = best.
    int position(Alt x) const { return pos_.at(static_cast<std::size_t>(x)); }

    bool prefers(Alt x, Alt y) const
    {
        int m = size();
        if (x < 0 || x >= m || y < 0 || y >= m)
            throw ValidationError("prefers: alternative out of range");
        if (x == y)
            throw ValidationError("prefers: alternatives must differ");
        return pos_[static_cast<std::size_t>(x)] < pos_[static_cast<std::size_t>(y)];
    }

    /// Same as prefers() without the argument checks; x == y yields false.
    bool strictly_prefers(Alt x, Alt y) const
    {
        return pos_[static_cast<std::size_t>(x)] < pos_[static_cast<std::size_t>(y)];
    }

    bool operator==(const Preference& o) const { return kind_ == o.kind_ && ranking_ == o.ranking_; }

private:
    PrefKind kind_ = PrefKind::Peaked;
    std::vector<Alt> ranking_;
    std::vector<int> pos_;
};

inline bool prefers(const Preference& pref, Alt x, Alt y) { return pref.prefers(x, y); }

/// All preferences of a kind over m alternatives, lexicographic by ranking.
/// There are 2^(m-1) of them.
inline std::vector<Preference> enumerate_domain(PrefKind kind, int m)
{
    if (m < 1)
        throw ValidationError("enumerate_domain needs at least one alternative");
    std::vector<std::vector<Alt>> rankings;
    // A single-peaked ranking grows an interval around the peak one step
    // at a time; each step extends either the left or the right end.
    for (Alt peak = 0; peak < m; ++peak) {
        const unsigned steps = static_cast<unsigned>(m - 1);
        for (unsigned choice = 0; choice < (1U << steps); ++choice) {
            std::vector<Alt> r{peak};
            int lo = peak, hi = peak;
            bool valid = true;
            for (unsigned s = 0; s < steps; ++s) {
                bool go_left = (choice >> s & 1U) != 0;
                if (go_left) {
                    if (lo == 0) { valid = false; break; }
                    r.push_back(--lo);
                } else {
                    if (hi == m - 1) { valid = false; break; }
                    r.push_back(++hi);
                }
            }
            if (valid)
                rankings.push_back(std::move(r));
        }
    }
    if (kind == PrefKind::Dipped)
        for (auto& r : rankings)
            std::reverse(r.begin(), r.end());
    std::sort(rankings.begin(), rankings.end());
    std::vector<Preference> out;
    out.reserve(rankings.size());
    for (auto& r : rankings)
        out.emplace_back(kind, std::move(r));
    return out;
}

inline Alt restricted_peak(const Preference& pref, const Range& omega)
{
    if (pref.kind() != PrefKind::Peaked)
        throw ValidationError("restricted_peak needs a single-peaked preference");
    if (omega.size() == 0)
        throw ValidationError("restricted_peak: empty range");
    for (Alt x : pref.ranking())
        if (omega.contains(x))
            return x;
    throw ValidationError("restricted_peak: range does not intersect the alternatives");
}

inline Alt restricted_dip(const Preference& pref, const Range& omega)
{
    if (pref.kind() != PrefKind::Dipped)
        throw ValidationError("restricted_dip needs a single-dipped preference");
    if (omega.size() == 0)
        throw ValidationError("restricted_dip: empty range");
    const auto& r = pref.ranking();
    for (auto it = r.rbegin(); it != r.rend(); ++it)
        if (omega.contains(*it))
            return *it;
    throw ValidationError("restricted_dip: range does not intersect the alternatives");
}

/// Agents are numbered 1..n; peaked and dipped partition them.
class AgentRoster {
public:
    AgentRoster() = default;

    AgentRoster(std::vector<int> peaked, std::vector<int> dipped)
        : peaked_(std::move(peaked)), dipped_(std::move(dipped))
    {
        n_ = static_cast<int>(peaked_.size() + dipped_.size());
        if (n_ > 30)
            throw ValidationError("at most 30 agents are supported");
        kinds_.assign(static_cast<std::size_t>(n_), PrefKind::Peaked);
        std::vector<bool> seen(static_cast<std::size_t>(n_), false);
        auto mark = [&](int id, PrefKind k) {
            if (id < 1 || id > n_)
                throw ValidationError("agent id " + std::to_string(id) + " outside 1.." + std::to_string(n_));
            if (seen[static_cast<std::size_t>(id - 1)])
                throw ValidationError("agent id " + std::to_string(id) + " listed twice");
            seen[static_cast<std::size_t>(id - 1)] = true;
            kinds_[static_cast<std::size_t>(id - 1)] = k;
        };
        for (int id : peaked_)
            mark(id, PrefKind::Peaked);
        for (int id : dipped_)
            mark(id, PrefKind::Dipped);
    }

    /// Peaked agents 1..a, dipped agents a+1..a+d.
    static AgentRoster blocks(int a, int d)
    {
        std::vector<int> p, q;
        for (int i = 1; i <= a; ++i)
            p.push_back(i);
        for (int j = a + 1; j <= a + d; ++j)
            q.push_back(j);
        return {std::move(p), std::move(q)};
    }

    int n() const { return n_; }
    const std::vector<int>& peaked() const { return peaked_; }
    const std::vector<int>& dipped() const { return dipped_; }
    /// Kind of the agent at zero-based position.
    PrefKind kind_at(int pos) const { return kinds_.at(static_cast<std::size_t>(pos)); }

    /// Bitmask of peaked agents, bit (id-1).
    std::uint32_t peaked_mask() const
    {
        std::uint32_t m = 0;
        for (int id : peaked_)
            m |= 1U << (id - 1);
        return m;
    }
    std::uint32_t dipped_mask() const
    {
        std::uint32_t m = 0;
        for (int id : dipped_)
            m |= 1U << (id - 1);
        return m;
    }
    std::uint32_t all_mask() const { return n_ == 0 ? 0U : (n_ >= 32 ? ~0U : ((1U << n_) - 1U)); }

    bool operator==(const AgentRoster& o) const { return peaked_ == o.peaked_ && dipped_ == o.dipped_; }

private:
    int n_ = 0;
    std::vector<int> peaked_;
    std::vector<int> dipped_;
    std::vector<PrefKind> kinds_;
};

/// One preference per agent, indexed by agent position (id - 1).
using Profile = std::vector<Preference>;

inline void check_profile(const Profile& profile, const AgentRoster& roster, int m)
{
    if (static_cast<int>(profile.size()) != roster.n())
        throw ValidationError("profile has " + std::to_string(profile.size()) + " preferences for " +
                              std::to_string(roster.n()) + " agents");
    for (int i = 0; i < roster.n(); ++i) {
        const auto& p = profile[static_cast<std::size_t>(i)];
        if (p.kind() != roster.kind_at(i))
            throw ValidationError("agent " + std::to_string(i + 1) + " must report a " +
                                  to_string(roster.kind_at(i)) + " preference");
        if (p.size() != m)
            throw ValidationError("agent " + std::to_string(i + 1) + " ranks the wrong number of alternatives");
    }
}

/// Restricted peaks of the peaked agents (roster order) and restricted
/// dips of the dipped agents (roster order).
struct RestrictedProfile {
    std::vector<Alt> peaks;
    std::vector<Alt> dips;

    bool operator==(const RestrictedProfile&) const = default;
};

inline RestrictedProfile restrict_profile(const Profile& profile, const AgentRoster& roster, const Range& omega)
{
    RestrictedProfile rp;
    for (int id : roster.peaked())
        rp.peaks.push_back(restricted_peak(profile.at(static_cast<std::size_t>(id - 1)), omega));
    for (int id : roster.dipped())
        rp.dips.push_back(restricted_dip(profile.at(static_cast<std::size_t>(id - 1)), omega));
    return rp;
}

inline void check_restricted(const RestrictedProfile& rp, const AgentRoster& roster, const Range& omega)
{
    if (rp.peaks.size() != roster.peaked().size())
        throw ValidationError("expected " + std::to_string(roster.peaked().size()) + " peaks, got " +
                              std::to_string(rp.peaks.size()));
    if (rp.dips.size() != roster.dipped().size())
        throw ValidationError("expected " + std::to_string(roster.dipped().size()) + " dips, got " +
                              std::to_string(rp.dips.size()));
    for (Alt x : rp.peaks)
        if (!omega.contains(x))
            throw ValidationError("reported peak is not in the range");
    for (Alt x : rp.dips)
        if (!omega.contains(x))
            throw ValidationError("reported dip is not in the range");
}

}  // namespace spfl
