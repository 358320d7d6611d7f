#include <gtest/gtest.h>

#include <random>

#include "spfl/spfl.hpp"

using namespace spfl;

namespace {

std::string parse_error(const std::string& text)
{
    try {
        rulespec_from_json(Json::parse(text));
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Io, RuleSpecRoundTrip)
{
    auto spec = example1_spec();
    auto j = rulespec_json(spec);
    EXPECT_EQ(j["r_omega"].dump(), "[1,2,[2,3],3,4]");
    EXPECT_EQ(j["L"]["2-3"].dump(), "[[1],[2],[3]]");
    auto back = rulespec_from_json(Json::parse(j.dump()));
    EXPECT_EQ(back.lcs, spec.lcs);
    EXPECT_EQ(back.deciders, spec.deciders);
    EXPECT_EQ(back.omega, spec.omega);
    EXPECT_EQ(back.roster, spec.roster);
}

TEST(Io, RandomSpecsRoundTripWithFractionalLocations)
{
    std::mt19937 rng(1);
    AlternativeSet X({Location(-3, 2), Location(0), Location(7, 3), Location(5)});
    for (int trial = 0; trial < 20; ++trial) {
        auto roster = AgentRoster::blocks(trial % 3, 1 + trial % 2);
        Range omega = Range::from_mask(4, 1U + static_cast<unsigned>(trial) % 15U);
        if (roster.peaked().empty() && omega.size() > 2)
            continue;
        auto spec = random_rulespec(X, omega, roster, rng);
        auto back = rulespec_from_json(Json::parse(rulespec_json(spec).dump()));
        EXPECT_EQ(back.lcs, spec.lcs);
        EXPECT_EQ(back.deciders, spec.deciders);
        EXPECT_EQ(back.omega_empty, spec.omega_empty);
        EXPECT_TRUE(validate(back).empty());
    }
}

TEST(Io, ParseErrorsCarryPaths)
{
    EXPECT_NE(parse_error(R"({"X":[1,2],"omega":[1,2],"peaked":[1],"dipped":[]})").find("r_omega"), std::string::npos);
    EXPECT_NE(parse_error(R"({"X":[1,"a"],"omega":[1],"peaked":[1],"dipped":[]})").find("/X/1"), std::string::npos);
    EXPECT_NE(parse_error(R"({"X":[1,2],"omega":[1,5],"peaked":[1],"dipped":[]})").find("/omega/1"),
              std::string::npos);
    EXPECT_NE(parse_error(R"({"X":[1,2],"omega":[1,2],"peaked":[1],"dipped":[],"r_omega":[1,2],"L":{"1":[[1]],"2":[[4]]}})")
                  .find("/L/2/0/0"),
              std::string::npos);
    EXPECT_NE(parse_error(R"({"X":[1,2,3],"omega":[1,3],"peaked":[1],"dipped":[2],"r_omega":[[1,2]],"L":{}})")
                  .find("/r_omega/0"),
              std::string::npos);
    EXPECT_NE(parse_error(R"({"X":[1,2],"omega":[1,2],"peaked":[1],"dipped":[2],"r_omega":[1],"L":{"1":[[1]]},"W":{"7":[]}})")
                  .find("/W/7"),
              std::string::npos);
    EXPECT_NE(parse_error("[1]").find("object"), std::string::npos);
}

TEST(Io, ProfilesAndTables)
{
    AlternativeSet X = AlternativeSet::iota(3);
    Profile p{Preference(PrefKind::Peaked, {1, 2, 0}), Preference(PrefKind::Dipped, {0, 2, 1})};
    auto j = profile_json(X, p);
    EXPECT_EQ(j.dump(), R"([{"kind":"peaked","ranking":[2,3,1]},{"kind":"dipped","ranking":[1,3,2]}])");
    EXPECT_EQ(profile_from_json(X, j, ""), p);
    EXPECT_THROW(profile_from_json(X, Json::parse(R"([{"kind":"peaked","ranking":[1,3,2]}])"), ""), ValidationError);

    RestrictedProfile rp{{1}, {2}};
    EXPECT_EQ(restricted_from_json(X, restricted_json(X, rp), ""), rp);

    auto spec = enumerate_rulespecs(X, Range::full(3), AgentRoster({1}, {2})).back();
    for (const auto& t : {tabulate(spec), tabulate_full(spec)})
        EXPECT_EQ(table_from_json(Json::parse(table_json(t).dump())), t);
    auto bad = table_json(tabulate(spec));
    bad["outcomes"].erase(0);
    EXPECT_THROW(table_from_json(bad), ValidationError);
}
