#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spfl/error.hpp"
#include "spfl/location.hpp"

namespace spfl {

/// Alternatives are referred to by their index in the underlying
/// AlternativeSet; index order is location order.
using Alt = int;

/// Finite, strictly increasing set of exact locations.
class AlternativeSet {
public:
    AlternativeSet() = default;

    explicit AlternativeSet(std::vector<Location> points) : points_(std::move(points))
    {
        if (points_.empty())
            throw ValidationError("alternative set must contain at least one point");
        for (std::size_t i = 1; i < points_.size(); ++i)
            if (!(points_[i - 1] < points_[i]))
                throw ValidationError("alternative set must be strictly increasing (at position " +
                                      std::to_string(i) + ")");
    }

    /// {1, 2, ..., m}
    static AlternativeSet iota(int m, int first = 1)
    {
        std::vector<Location> pts;
        for (int i = 0; i < m; ++i)
            pts.emplace_back(first + i);
        return AlternativeSet(std::move(pts));
    }

    int size() const { return static_cast<int>(points_.size()); }
    const Location& operator[](Alt x) const { return points_.at(static_cast<std::size_t>(x)); }
    std::span<const Location> points() const { return points_; }

    /// Index of a location, or -1.
    Alt index_of(const Location& v) const
    {
        auto it = std::lower_bound(points_.begin(), points_.end(), v);
        if (it == points_.end() || *it != v)
            return -1;
        return static_cast<Alt>(it - points_.begin());
    }

    Alt require_index(const Location& v) const
    {
        Alt x = index_of(v);
        if (x < 0)
            throw ValidationError("location " + to_string(v) + " is not an alternative");
        return x;
    }

    bool operator==(const AlternativeSet&) const = default;

private:
    std::vector<Location> points_;
};

/// Nonempty subset of the alternatives, kept as increasing indices.
class Range {
public:
    Range() = default;

    Range(int universe, std::vector<Alt> members) : members_(std::move(members)), rank_(universe, -1)
    {
        if (members_.empty())
            throw ValidationError("range must be nonempty");
        for (std::size_t i = 0; i < members_.size(); ++i) {
            Alt x = members_[i];
            if (x < 0 || x >= universe)
                throw ValidationError("range member " + std::to_string(x) + " outside the alternative set");
            if (i > 0 && members_[i - 1] >= x)
                throw ValidationError("range members must be strictly increasing");
            rank_[static_cast<std::size_t>(x)] = static_cast<int>(i);
        }
    }

    static Range full(int universe)
    {
        std::vector<Alt> all(static_cast<std::size_t>(universe));
        for (int i = 0; i < universe; ++i)
            all[static_cast<std::size_t>(i)] = i;
        return Range(universe, std::move(all));
    }

    /// Bitmask constructor, bit x set means alternative x is a member.
    static Range from_mask(int universe, unsigned mask)
    {
        std::vector<Alt> m;
        for (int x = 0; x < universe; ++x)
            if (mask >> x & 1U)
                m.push_back(x);
        return Range(universe, std::move(m));
    }

    int universe() const { return static_cast<int>(rank_.size()); }
    int size() const { return static_cast<int>(members_.size()); }
    std::span<const Alt> members() const { return members_; }
    Alt operator[](int k) const { return members_.at(static_cast<std::size_t>(k)); }
    Alt min() const { return members_.front(); }
    Alt max() const { return members_.back(); }

    bool contains(Alt x) const
    {
        return x >= 0 && x < universe() && rank_[static_cast<std::size_t>(x)] >= 0;
    }

    /// Position of x inside the range, or -1.
    int rank(Alt x) const { return contains(x) ? rank_[static_cast<std::size_t>(x)] : -1; }

    unsigned mask() const
    {
        unsigned m = 0;
        for (Alt x : members_)
            m |= 1U << x;
        return m;
    }

    bool operator==(const Range& o) const { return members_ == o.members_ && universe() == o.universe(); }

private:
    std::vector<Alt> members_;
    std::vector<int> rank_;
};

/// Range minus its two endpoints.
inline std::vector<Alt> interior(const Range& omega)
{
    if (omega.size() <= 2)
        return {};
    auto m = omega.members();
    return {m.begin() + 1, m.end() - 1};
}

}  // namespace spfl
