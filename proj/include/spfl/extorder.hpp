#pragma once

#include <compare>
#include <string>
#include <vector>

#include "spfl/error.hpp"
#include "spfl/range.hpp"

namespace spfl {

/// Either a single range alternative (lo == hi) or a contiguous pair
/// (lo < hi) of range alternatives. Identity is structural.
struct ExtElem {
    Alt lo = 0;
    Alt hi = 0;

    static constexpr ExtElem alt(Alt x) { return {x, x}; }
    static constexpr ExtElem pair(Alt x, Alt y) { return {x, y}; }

    constexpr bool is_pair() const { return lo != hi; }
    constexpr bool is_alt() const { return lo == hi; }

    friend constexpr auto operator<=>(const ExtElem&, const ExtElem&) = default;
};

/// Adjacent pairs of the range, increasing.
inline std::vector<ExtElem> contiguous_pairs(const Range& omega)
{
    std::vector<ExtElem> out;
    for (int k = 0; k + 1 < omega.size(); ++k)
        out.push_back(ExtElem::pair(omega[k], omega[k + 1]));
    return out;
}

/// The range and its contiguous pairs, interleaved as
/// x1 < (x1,x2) < x2 < (x2,x3) < ... . Comparison goes through the
/// position in that sequence: Alt of rank k sits at 2k, the pair that
/// starts at rank k at 2k+1.
class ExtOrder {
public:
    ExtOrder() = default;

    explicit ExtOrder(Range omega) : omega_(std::move(omega))
    {
        for (int k = 0; k < omega_.size(); ++k) {
            if (k > 0)
                elements_.push_back(ExtElem::pair(omega_[k - 1], omega_[k]));
            elements_.push_back(ExtElem::alt(omega_[k]));
        }
    }

    const Range& omega() const { return omega_; }
    const std::vector<ExtElem>& elements() const { return elements_; }
    int size() const { return static_cast<int>(elements_.size()); }

    bool contains(const ExtElem& e) const
    {
        if (e.is_alt())
            return omega_.contains(e.lo);
        int k = omega_.rank(e.lo);
        return k >= 0 && k + 1 < omega_.size() && omega_[k + 1] == e.hi;
    }

    /// Index of e in elements(); throws if e does not belong to this order.
    int position(const ExtElem& e) const
    {
        if (!contains(e))
            throw ValidationError("element " + describe(e) + " is not in the extended range");
        return 2 * omega_.rank(e.lo) + (e.is_pair() ? 1 : 0);
    }

    /// Position of an alternative of the range, unchecked.
    int alt_position(Alt x) const { return 2 * omega_.rank(x); }

    bool leq_star(const ExtElem& a, const ExtElem& b) const { return position(a) <= position(b); }
    bool less_star(const ExtElem& a, const ExtElem& b) const { return position(a) < position(b); }

    static std::string describe(const ExtElem& e)
    {
        if (e.is_alt())
            return "#" + std::to_string(e.lo);
        return "(#" + std::to_string(e.lo) + ",#" + std::to_string(e.hi) + ")";
    }

private:
    Range omega_;
    std::vector<ExtElem> elements_;
};

inline bool leq_star(const ExtOrder& order, const ExtElem& a, const ExtElem& b) { return order.leq_star(a, b); }

}  // namespace spfl
