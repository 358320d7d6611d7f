#pragma once

// Built-in fixture: three peaked agents (1-3), three dipped agents (4-6),
// range {1,2,3,4}; the first step is the median of the peaks and phantoms
// at 1, 1, (2,3), 4, and the pair (2,3) is settled by majority with ties
// going to 2.

#include "spfl/rulekernel.hpp"

namespace spfl {

inline RuleSpec example1_spec()
{
    AlternativeSet X = AlternativeSet::iota(4);
    AgentRoster roster({1, 2, 3}, {4, 5, 6});
    Range omega = Range::full(4);
    const Coalition A = roster.peaked_mask();

    std::vector<Coalition> two, one;
    for (Coalition s = 1; s <= A; ++s) {
        if (!is_subset(s, A))
            continue;
        if (std::popcount(s) == 2)
            two.push_back(s);
        if (std::popcount(s) == 1)
            one.push_back(s);
    }
    auto at_least_two = MonotoneFamily::generated_by(two);
    auto at_least_one = MonotoneFamily::generated_by(one);

    std::vector<Coalition> w;
    for (Coalition s = 1; s < (1U << 6); ++s)
        if (std::popcount(s) == 3 && std::popcount(s & A) == 1)
            w.push_back(s);

    LeftCoalitionSystem lcs{
        {ExtElem::alt(0), ExtElem::alt(1), ExtElem::pair(1, 2), ExtElem::alt(2), ExtElem::alt(3)},
        {at_least_two, at_least_two, at_least_one, at_least_one, at_least_one}};
    return RuleSpec{X, roster, omega, lcs, {{ExtElem::pair(1, 2), MonotoneFamily::generated_by(w)}}, std::nullopt};
}

}  // namespace spfl
