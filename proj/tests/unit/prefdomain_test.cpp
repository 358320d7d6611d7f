#include <gtest/gtest.h>

#include "spfl/spfl.hpp"
#include "support/brute.hpp"

using namespace spfl;

namespace {

std::vector<std::vector<int>> rankings(const std::vector<Preference>& d)
{
    std::vector<std::vector<int>> out;
    for (const auto& p : d)
        out.push_back(p.ranking());
    return out;
}

}  // namespace

TEST(Domain, CountsMatchPermutationFilter)
{
    for (int m = 1; m <= 7; ++m) {
        auto peaked = enumerate_domain(PrefKind::Peaked, m);
        auto dipped = enumerate_domain(PrefKind::Dipped, m);
        EXPECT_EQ(peaked.size(), std::size_t{1} << (m - 1)) << m;
        EXPECT_EQ(dipped.size(), std::size_t{1} << (m - 1)) << m;
        EXPECT_EQ(rankings(peaked), brute::domain(true, m)) << m;
        EXPECT_EQ(rankings(dipped), brute::domain(false, m)) << m;
    }
}

TEST(Domain, ThreeAlternativesListed)
{
    auto d = rankings(enumerate_domain(PrefKind::Peaked, 3));
    std::vector<std::vector<int>> want{{0, 1, 2}, {1, 0, 2}, {1, 2, 0}, {2, 1, 0}};
    EXPECT_EQ(d, want);
    auto e = rankings(enumerate_domain(PrefKind::Dipped, 3));
    std::vector<std::vector<int>> want_d{{0, 1, 2}, {0, 2, 1}, {2, 0, 1}, {2, 1, 0}};
    EXPECT_EQ(e, want_d);
}

TEST(Domain, RejectsEmpty) { EXPECT_THROW(enumerate_domain(PrefKind::Peaked, 0), ValidationError); }

TEST(Preference, PeakDipAndComparison)
{
    Preference p(PrefKind::Peaked, {2, 3, 1, 0});
    EXPECT_EQ(p.peak(), 2);
    EXPECT_TRUE(p.prefers(3, 1));
    EXPECT_FALSE(p.prefers(0, 1));
    EXPECT_THROW(p.dip(), std::logic_error);
    EXPECT_THROW(p.prefers(1, 1), std::invalid_argument);

    Preference q(PrefKind::Dipped, {0, 3, 2, 1});
    EXPECT_EQ(q.dip(), 1);
    EXPECT_TRUE(prefers(q, 0, 3));
}

TEST(Preference, RejectsWrongShape)
{
    EXPECT_THROW(Preference(PrefKind::Peaked, {0, 2, 1}), ValidationError);
    EXPECT_THROW(Preference(PrefKind::Dipped, {1, 0, 2}), ValidationError);
    EXPECT_THROW(Preference(PrefKind::Peaked, {0, 0, 1}), ValidationError);
    EXPECT_THROW(Preference(PrefKind::Peaked, {0, 3, 1}), ValidationError);
}

TEST(Preference, RestrictedPeakAndDip)
{
    // X = {1..5}, range {1,3,5}
    Range omega(5, {0, 2, 4});
    Preference p(PrefKind::Peaked, {1, 0, 2, 3, 4});
    EXPECT_EQ(restricted_peak(p, omega), 0);
    Preference p2(PrefKind::Peaked, {3, 2, 4, 1, 0});
    EXPECT_EQ(restricted_peak(p2, omega), 2);
    Preference q(PrefKind::Dipped, {4, 0, 3, 1, 2});
    EXPECT_EQ(restricted_dip(q, omega), 2);
    Preference q2(PrefKind::Dipped, {0, 4, 3, 2, 1});
    EXPECT_EQ(restricted_dip(q2, omega), 2);
}

TEST(Preference, RestrictedPeakIsBestInRangeForEveryPreference)
{
    for (int m = 2; m <= 5; ++m)
        for (unsigned mask = 1; mask < (1U << m); ++mask) {
            Range omega = Range::from_mask(m, mask);
            for (auto kind : {PrefKind::Peaked, PrefKind::Dipped})
                for (const auto& p : enumerate_domain(kind, m)) {
                    Alt v = kind == PrefKind::Peaked ? restricted_peak(p, omega) : restricted_dip(p, omega);
                    ASSERT_TRUE(omega.contains(v));
                    for (Alt y : omega.members()) {
                        if (y != v) {
                            EXPECT_EQ(p.prefers(v, y), kind == PrefKind::Peaked);
                        }
                    }
                }
        }
}

TEST(Roster, PartitionChecks)
{
    AgentRoster r({1, 3}, {2});
    EXPECT_EQ(r.n(), 3);
    EXPECT_EQ(r.kind_at(1), PrefKind::Dipped);
    EXPECT_EQ(r.peaked_mask(), 0b101U);
    EXPECT_EQ(r.dipped_mask(), 0b010U);
    EXPECT_THROW(AgentRoster({1, 1}, {2}), ValidationError);
    EXPECT_THROW(AgentRoster({1}, {3}), ValidationError);
    EXPECT_EQ(AgentRoster::blocks(2, 1), AgentRoster({1, 2}, {3}));
}

TEST(Profile, KindMismatchRejected)
{
    AgentRoster r({1}, {2});
    Profile bad{Preference(PrefKind::Peaked, {0, 1}), Preference(PrefKind::Peaked, {1, 0})};
    EXPECT_THROW(check_profile(bad, r, 2), ValidationError);
}

TEST(Location, ParseAndPrint)
{
    EXPECT_EQ(parse_location("7/2"), Location(7, 2));
    EXPECT_EQ(parse_location("-3"), Location(-3));
    EXPECT_EQ(to_string(Location(6, 4)), "3/2");
    EXPECT_EQ(to_string(Location(4)), "4");
    EXPECT_THROW(parse_location("x"), ValidationError);
    EXPECT_THROW(parse_location("1/0"), ValidationError);
    EXPECT_THROW(AlternativeSet({Location(2), Location(1)}), ValidationError);
}
