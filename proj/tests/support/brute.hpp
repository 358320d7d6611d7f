#pragma once

// Definition-level oracles for the tests. Nothing here reuses the
// library's enumeration, indexing or search code: domains come from
// filtering all permutations, profiles are walked with a plain odometer,
// manipulations are searched by trying every coalition and every joint
// report, and two-step rules are evaluated straight from their
// parameters on full preferences. The library is only asked for the
// outcome of a table at a profile.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "spfl/spfl.hpp"

namespace brute {

using Ranking = std::vector<int>;

/// Peaked iff, on each side of the top alternative, nearer is better.
inline bool peaked_by_definition(const Ranking& r)
{
    const int m = static_cast<int>(r.size());
    std::vector<int> pos(m);
    for (int k = 0; k < m; ++k)
        pos[r[k]] = k;
    int peak = r[0];
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            if (b <= peak && pos[b] > pos[a])
                return false;
            if (a >= peak && pos[a] > pos[b])
                return false;
        }
    return true;
}

/// Dipped iff, on each side of the bottom alternative, farther is better.
inline bool dipped_by_definition(const Ranking& r)
{
    Ranking rev(r.rbegin(), r.rend());
    const int m = static_cast<int>(r.size());
    std::vector<int> pos(m);
    for (int k = 0; k < m; ++k)
        pos[rev[k]] = k;
    int dip = rev[0];
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            if (b <= dip && pos[b] > pos[a])
                return false;
            if (a >= dip && pos[a] > pos[b])
                return false;
        }
    return true;
}

inline std::vector<Ranking> domain(bool peaked, int m)
{
    Ranking r(m);
    std::iota(r.begin(), r.end(), 0);
    std::vector<Ranking> out;
    do {
        if (peaked ? peaked_by_definition(r) : dipped_by_definition(r))
            out.push_back(r);
    } while (std::next_permutation(r.begin(), r.end()));
    return out;
}

inline bool better(const Ranking& r, int x, int y)
{
    for (int a : r) {
        if (a == x)
            return true;
        if (a == y)
            return false;
    }
    return false;
}

using Rule = std::function<int(const std::vector<Ranking>&)>;

/// Kind per agent position (true = peaked).
inline std::vector<bool> kinds(const spfl::AgentRoster& roster)
{
    std::vector<bool> k(static_cast<std::size_t>(roster.n()));
    for (int i = 0; i < roster.n(); ++i)
        k[static_cast<std::size_t>(i)] = roster.kind_at(i) == spfl::PrefKind::Peaked;
    return k;
}

/// Calls visit on every profile; stops early when visit returns true.
inline bool for_each_profile(int m, const std::vector<bool>& kind, const std::function<bool(const std::vector<Ranking>&)>& visit)
{
    auto P = domain(true, m);
    auto D = domain(false, m);
    const std::size_t n = kind.size();
    std::vector<std::size_t> c(n, 0);
    std::vector<Ranking> prof(n);
    for (;;) {
        for (std::size_t i = 0; i < n; ++i)
            prof[i] = (kind[i] ? P : D)[c[i]];
        if (visit(prof))
            return true;
        std::size_t i = n;
        while (i-- > 0) {
            if (++c[i] < (kind[i] ? P : D).size())
                break;
            c[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1))
            return false;
    }
}

inline Rule from_table(const spfl::RuleTable& t)
{
    return [t](const std::vector<Ranking>& prof) {
        spfl::Profile p;
        for (std::size_t i = 0; i < prof.size(); ++i)
            p.emplace_back(t.roster.kind_at(static_cast<int>(i)), prof[i]);
        return spfl::table_outcome(t, p);
    };
}

/// Some nonempty coalition, by a joint report, obtains an outcome all of
/// its members strictly prefer. Singletons included.
inline bool manipulable(int m, const std::vector<bool>& kind, const Rule& f, bool coalitions)
{
    auto P = domain(true, m);
    auto D = domain(false, m);
    const int n = static_cast<int>(kind.size());
    return for_each_profile(m, kind, [&](const std::vector<Ranking>& truth) {
        int y = f(truth);
        for (unsigned S = 1; S < (1U << n); ++S) {
            if (!coalitions && (S & (S - 1)) != 0)
                continue;
            std::vector<int> members;
            for (int i = 0; i < n; ++i)
                if (S >> i & 1U)
                    members.push_back(i);
            std::vector<std::size_t> c(members.size(), 0);
            auto lie = truth;
            for (;;) {
                for (std::size_t k = 0; k < members.size(); ++k)
                    lie[members[k]] = (kind[members[k]] ? P : D)[c[k]];
                int x = f(lie);
                bool all = x != y;
                for (int i : members)
                    all = all && better(truth[i], x, y);
                if (all)
                    return true;
                std::size_t k = members.size();
                while (k-- > 0) {
                    if (++c[k] < (kind[members[k]] ? P : D).size())
                        break;
                    c[k] = 0;
                }
                if (k == static_cast<std::size_t>(-1))
                    break;
            }
        }
        return false;
    });
}

inline bool pareto_dominated_somewhere(int m, const std::vector<bool>& kind, const Rule& f)
{
    return for_each_profile(m, kind, [&](const std::vector<Ranking>& prof) {
        int y = f(prof);
        for (int x = 0; x < m; ++x) {
            if (x == y)
                continue;
            bool all = true;
            for (const auto& r : prof)
                all = all && better(r, x, y);
            if (all)
                return true;
        }
        return false;
    });
}

/// Two-step rule evaluated from its parameters on full preferences. The
/// extended order is read as the order of midpoints: an alternative sits
/// at its own location, a pair at the midpoint of its endpoints.
inline int two_step(const spfl::RuleSpec& spec, const std::vector<Ranking>& prof)
{
    using spfl::Location;
    const auto& X = spec.X;
    auto mid = [&](const spfl::ExtElem& e) { return (X[e.lo] + X[e.hi]) / Location(2); };
    auto best_in_range = [&](const Ranking& r) {
        for (int a : r)
            if (spec.omega.contains(a))
                return a;
        return -1;
    };
    const spfl::Coalition A = spec.roster.peaked_mask();
    spfl::ExtElem alpha{-1, -1};
    if (A == 0) {
        alpha = *spec.omega_empty;
    } else {
        std::vector<std::size_t> order(spec.lcs.r_omega.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return mid(spec.lcs.r_omega[a]) < mid(spec.lcs.r_omega[b]); });
        for (std::size_t k : order) {
            spfl::Coalition left = 0;
            for (int id : spec.roster.peaked())
                if (X[best_in_range(prof[static_cast<std::size_t>(id - 1)])] <= mid(spec.lcs.r_omega[k]))
                    left |= 1U << (id - 1);
            bool win = false;
            for (spfl::Coalition c : spec.lcs.families[k].minimal())
                win = win || (c & ~left) == 0;
            if (win) {
                alpha = spec.lcs.r_omega[k];
                break;
            }
        }
    }
    if (alpha.lo == alpha.hi)
        return alpha.lo;
    spfl::Coalition left = 0;
    for (int i = 0; i < spec.roster.n(); ++i)
        if (better(prof[static_cast<std::size_t>(i)], alpha.lo, alpha.hi))
            left |= 1U << i;
    for (const auto& d : spec.deciders)
        if (d.pair == alpha)
            for (spfl::Coalition c : d.winning.minimal())
                if ((c & ~left) == 0)
                    return alpha.lo;
    return alpha.hi;
}

}  // namespace brute
