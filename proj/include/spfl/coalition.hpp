#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace spfl {

/// Set of agents; bit (id - 1) stands for agent id.
using Coalition = std::uint32_t;

inline bool is_subset(Coalition a, Coalition b) { return (a & ~b) == 0; }

inline std::vector<int> coalition_ids(Coalition c)
{
    std::vector<int> ids;
    for (int i = 0; c != 0; ++i, c >>= 1)
        if (c & 1U)
            ids.push_back(i + 1);
    return ids;
}

inline Coalition coalition_of(const std::vector<int>& ids)
{
    Coalition c = 0;
    for (int id : ids)
        c |= 1U << (id - 1);
    return c;
}

inline std::string describe_coalition(Coalition c)
{
    std::string s = "{";
    bool first = true;
    for (int id : coalition_ids(c)) {
        if (!first)
            s += ",";
        s += std::to_string(id);
        first = false;
    }
    return s + "}";
}

/// Upward-closed family of coalitions, stored by its minimal members.
/// The stored list is kept sorted so two families are equal iff their
/// upward closures are.
class MonotoneFamily {
public:
    MonotoneFamily() = default;

    /// Builds the family generated by arbitrary coalitions (non-minimal
    /// ones are dropped).
    static MonotoneFamily generated_by(std::vector<Coalition> generators)
    {
        MonotoneFamily f;
        f.minimal_ = minimize(std::move(generators));
        return f;
    }

    /// Wraps a list that is claimed to be an antichain without minimizing;
    /// is_antichain() reports whether the claim holds.
    static MonotoneFamily from_minimal_unchecked(std::vector<Coalition> minimal)
    {
        std::sort(minimal.begin(), minimal.end());
        MonotoneFamily f;
        f.minimal_ = std::move(minimal);
        return f;
    }

    const std::vector<Coalition>& minimal() const { return minimal_; }
    bool empty() const { return minimal_.empty(); }

    bool contains(Coalition c) const
    {
        return std::any_of(minimal_.begin(), minimal_.end(), [c](Coalition m) { return is_subset(m, c); });
    }

    /// Every member of this family is a member of other.
    bool included_in(const MonotoneFamily& other) const
    {
        return std::all_of(minimal_.begin(), minimal_.end(), [&](Coalition m) { return other.contains(m); });
    }

    bool is_antichain() const
    {
        for (std::size_t i = 0; i < minimal_.size(); ++i)
            for (std::size_t j = 0; j < minimal_.size(); ++j)
                if (i != j && is_subset(minimal_[i], minimal_[j]))
                    return false;
        return true;
    }

    MonotoneFamily join(const MonotoneFamily& other) const
    {
        auto g = minimal_;
        g.insert(g.end(), other.minimal_.begin(), other.minimal_.end());
        return generated_by(std::move(g));
    }

    /// Members of the family that are subsets of universe.
    std::vector<Coalition> members(Coalition universe) const
    {
        std::vector<Coalition> out;
        for (Coalition c = universe;; c = (c - 1) & universe) {
            if (contains(c))
                out.push_back(c);
            if (c == 0)
                break;
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool operator==(const MonotoneFamily&) const = default;

    static std::vector<Coalition> minimize(std::vector<Coalition> sets)
    {
        std::sort(sets.begin(), sets.end(),
                  [](Coalition a, Coalition b) {
                      int pa = std::popcount(a), pb = std::popcount(b);
                      return pa != pb ? pa < pb : a < b;
                  });
        sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
        std::vector<Coalition> kept;
        for (Coalition s : sets)
            if (std::none_of(kept.begin(), kept.end(), [s](Coalition k) { return is_subset(k, s); }))
                kept.push_back(s);
        std::sort(kept.begin(), kept.end());
        return kept;
    }

private:
    std::vector<Coalition> minimal_;
};

}  // namespace spfl
