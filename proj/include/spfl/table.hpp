#pragma once

// Extensional rules. A RuleTable lists one outcome per profile of a
// finite profile space, enumerated lexicographically with agent 1 as the
// most significant coordinate. Two spaces are supported:
//  - full: each agent's coordinate is her preference, indexed in
//    enumerate_domain order;
//  - grid: each agent's coordinate is her restricted peak/dip with
//    respect to the grid (a subset of X), indexed by rank in the grid.
// Either way the table denotes the rule R -> outcomes[index(R)] on full
// preference profiles over X.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spfl/error.hpp"
#include "spfl/prefdomain.hpp"
#include "spfl/rulekernel.hpp"

namespace spfl {

inline constexpr std::uint64_t kMaxTableSize = std::uint64_t{1} << 24;

/// Mixed-radix enumeration of profiles.
class ProfileSpace {
public:
    ProfileSpace() = default;

    explicit ProfileSpace(std::vector<int> radices) : radices_(std::move(radices)), strides_(radices_.size())
    {
        size_ = 1;
        for (std::size_t i = radices_.size(); i-- > 0;) {
            strides_[i] = size_;
            size_ *= static_cast<std::uint64_t>(radices_[i]);
            if (size_ > kMaxTableSize)
                throw SizeLimitError("profile space exceeds " + std::to_string(kMaxTableSize) + " profiles");
        }
    }

    int agents() const { return static_cast<int>(radices_.size()); }
    std::uint64_t size() const { return size_; }
    int radix(int i) const { return radices_[static_cast<std::size_t>(i)]; }
    std::uint64_t stride(int i) const { return strides_[static_cast<std::size_t>(i)]; }

    int coordinate(std::uint64_t index, int i) const
    {
        return static_cast<int>(index / strides_[static_cast<std::size_t>(i)] %
                                static_cast<std::uint64_t>(radices_[static_cast<std::size_t>(i)]));
    }

    void decode(std::uint64_t index, std::span<int> coords) const
    {
        for (int i = 0; i < agents(); ++i)
            coords[static_cast<std::size_t>(i)] = coordinate(index, i);
    }

    std::uint64_t encode(std::span<const int> coords) const
    {
        std::uint64_t idx = 0;
        for (int i = 0; i < agents(); ++i)
            idx += static_cast<std::uint64_t>(coords[static_cast<std::size_t>(i)]) * strides_[static_cast<std::size_t>(i)];
        return idx;
    }

private:
    std::vector<int> radices_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t size_ = 1;
};

/// Preference domains of both kinds over m alternatives.
class Domains {
public:
    Domains() = default;
    explicit Domains(int m)
        : m_(m), peaked_(enumerate_domain(PrefKind::Peaked, m)), dipped_(enumerate_domain(PrefKind::Dipped, m))
    {
    }

    int alternatives() const { return m_; }
    const std::vector<Preference>& of(PrefKind k) const { return k == PrefKind::Peaked ? peaked_ : dipped_; }

    /// Index of a preference in its domain.
    int index_of(const Preference& p) const
    {
        const auto& d = of(p.kind());
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d[i] == p)
                return static_cast<int>(i);
        throw ValidationError("preference not in domain");
    }

private:
    int m_ = 0;
    std::vector<Preference> peaked_;
    std::vector<Preference> dipped_;
};

struct RuleTable {
    AlternativeSet X;
    AgentRoster roster;
    std::optional<Range> grid;
    std::vector<Alt> outcomes;

    bool operator==(const RuleTable& o) const
    {
        return X == o.X && roster == o.roster && grid == o.grid && outcomes == o.outcomes;
    }
};

inline ProfileSpace full_space(int m, const AgentRoster& roster)
{
    return ProfileSpace(std::vector<int>(static_cast<std::size_t>(roster.n()), 1 << (m - 1)));
}

inline ProfileSpace grid_space(const Range& grid, const AgentRoster& roster)
{
    return ProfileSpace(std::vector<int>(static_cast<std::size_t>(roster.n()), grid.size()));
}

inline ProfileSpace space_of(const RuleTable& t)
{
    return t.grid ? grid_space(*t.grid, t.roster) : full_space(t.X.size(), t.roster);
}

inline void check_table(const RuleTable& t)
{
    if (t.grid && t.grid->universe() != t.X.size())
        throw ValidationError("table grid is defined over a different alternative set");
    auto space = space_of(t);
    if (t.outcomes.size() != space.size())
        throw ValidationError("table has " + std::to_string(t.outcomes.size()) + " outcomes, expected " +
                              std::to_string(space.size()));
    for (Alt x : t.outcomes)
        if (x < 0 || x >= t.X.size())
            throw ValidationError("table outcome outside the alternative set");
}

/// Builds a grid table by calling fn with the per-agent grid values.
inline RuleTable make_grid_table(const AlternativeSet& X, const AgentRoster& roster, const Range& grid,
                                 const std::function<Alt(std::span<const Alt>)>& fn)
{
    RuleTable t{X, roster, grid, {}};
    auto space = grid_space(grid, roster);
    t.outcomes.resize(space.size());
    std::vector<int> c(static_cast<std::size_t>(roster.n()));
    std::vector<Alt> vals(c.size());
    for (std::uint64_t idx = 0; idx < space.size(); ++idx) {
        space.decode(idx, c);
        for (std::size_t i = 0; i < c.size(); ++i)
            vals[i] = grid[c[i]];
        t.outcomes[idx] = fn(vals);
    }
    return t;
}

/// Builds a full-profile table by calling fn with the per-agent preferences.
inline RuleTable make_full_table(const AlternativeSet& X, const AgentRoster& roster,
                                 const std::function<Alt(std::span<const Preference* const>)>& fn)
{
    Domains dom(X.size());
    RuleTable t{X, roster, std::nullopt, {}};
    auto space = full_space(X.size(), roster);
    t.outcomes.resize(space.size());
    std::vector<int> c(static_cast<std::size_t>(roster.n()));
    std::vector<const Preference*> prefs(c.size());
    for (std::uint64_t idx = 0; idx < space.size(); ++idx) {
        space.decode(idx, c);
        for (std::size_t i = 0; i < c.size(); ++i)
            prefs[i] = &dom.of(roster.kind_at(static_cast<int>(i)))[static_cast<std::size_t>(c[i])];
        t.outcomes[idx] = fn(prefs);
    }
    return t;
}

/// Outcome table of a rule over its own restricted-profile grid.
inline RuleTable tabulate(const RuleSpec& spec)
{
    CompiledRule rule(spec);
    return make_grid_table(spec.X, spec.roster, spec.omega, [&](std::span<const Alt> v) { return rule(v); });
}

/// Grid index of each preference's restricted peak/dip, per kind, in
/// domain order.
inline std::vector<int> grid_types(const Domains& dom, PrefKind kind, const Range& grid)
{
    std::vector<int> out;
    for (const auto& p : dom.of(kind))
        out.push_back(grid.rank(kind == PrefKind::Peaked ? restricted_peak(p, grid) : restricted_dip(p, grid)));
    return out;
}

/// Outcomes over all full preference profiles.
inline std::vector<Alt> full_outcomes(const RuleTable& t)
{
    check_table(t);
    if (!t.grid)
        return t.outcomes;
    Domains dom(t.X.size());
    auto types_p = grid_types(dom, PrefKind::Peaked, *t.grid);
    auto types_d = grid_types(dom, PrefKind::Dipped, *t.grid);
    auto fs = full_space(t.X.size(), t.roster);
    auto gs = grid_space(*t.grid, t.roster);
    std::vector<Alt> out(fs.size());
    std::vector<int> c(static_cast<std::size_t>(t.roster.n()));
    for (std::uint64_t idx = 0; idx < fs.size(); ++idx) {
        fs.decode(idx, c);
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = (t.roster.kind_at(static_cast<int>(i)) == PrefKind::Peaked ? types_p : types_d)[static_cast<std::size_t>(c[i])];
        out[idx] = t.outcomes[gs.encode(c)];
    }
    return out;
}

inline RuleTable to_full_table(const RuleTable& t)
{
    return {t.X, t.roster, std::nullopt, full_outcomes(t)};
}

inline RuleTable tabulate_full(const RuleSpec& spec) { return to_full_table(tabulate(spec)); }

/// Set of attained outcomes. Every grid cell is realised by some full
/// profile (a preference peaked/dipped at a grid point restricts to it).
inline Range range_of(const RuleTable& t)
{
    check_table(t);
    std::vector<bool> hit(static_cast<std::size_t>(t.X.size()), false);
    for (Alt x : t.outcomes)
        hit[static_cast<std::size_t>(x)] = true;
    std::vector<Alt> members;
    for (Alt x = 0; x < t.X.size(); ++x)
        if (hit[static_cast<std::size_t>(x)])
            members.push_back(x);
    return Range(t.X.size(), std::move(members));
}

/// Outcome of a table at a full profile.
inline Alt table_outcome(const RuleTable& t, const Profile& profile)
{
    check_profile(profile, t.roster, t.X.size());
    Domains dom(t.X.size());
    std::vector<int> c;
    for (const auto& p : profile) {
        if (t.grid) {
            Alt v = p.kind() == PrefKind::Peaked ? restricted_peak(p, *t.grid) : restricted_dip(p, *t.grid);
            c.push_back(t.grid->rank(v));
        } else {
            c.push_back(dom.index_of(p));
        }
    }
    return t.outcomes.at(space_of(t).encode(c));
}

/// Declared-range check: the attained range equals omega.
inline bool range_matches(const RuleSpec& spec) { return range_of(tabulate(spec)) == spec.omega; }

}  // namespace spfl
