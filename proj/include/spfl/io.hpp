#pragma once

// JSON reading and writing for rule specs, profiles, tables, witnesses
// and reports. Locations are written as numbers when integral and as
// "p/q" strings otherwise; both forms are accepted on input. Parse errors
// carry a JSON-pointer style path to the offending value.

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spfl/exhaustive.hpp"
#include "spfl/rulekernel.hpp"
#include "spfl/table.hpp"

namespace spfl {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void fail_at(const std::string& path, const std::string& what)
{
    throw ValidationError((path.empty() ? std::string("/") : path) + ": " + what);
}

inline const Json& field(const Json& j, const char* name, const std::string& path)
{
    if (!j.is_object())
        fail_at(path, "expected an object");
    auto it = j.find(name);
    if (it == j.end())
        fail_at(path, std::string("missing \"") + name + "\"");
    return *it;
}

inline const Json& array_at(const Json& j, const std::string& path)
{
    if (!j.is_array())
        fail_at(path, "expected an array");
    return j;
}

inline int int_at(const Json& j, const std::string& path)
{
    if (!j.is_number_integer())
        fail_at(path, "expected an integer");
    return j.get<int>();
}

}  // namespace detail

inline Json location_json(const Location& x)
{
    if (x.denominator() == 1)
        return x.numerator();
    return to_string(x);
}

inline Location location_from_json(const Json& j, const std::string& path)
{
    try {
        if (j.is_number_integer())
            return Location(j.get<std::int64_t>());
        if (j.is_string())
            return parse_location(j.get<std::string>());
    } catch (const std::exception& e) {
        detail::fail_at(path, e.what());
    }
    detail::fail_at(path, "expected an integer or a \"p/q\" string");
}

inline Alt alt_from_json(const AlternativeSet& X, const Json& j, const std::string& path)
{
    Alt x = X.index_of(location_from_json(j, path));
    if (x < 0)
        detail::fail_at(path, "location is not an alternative");
    return x;
}

inline Json alts_json(const AlternativeSet& X, std::span<const Alt> xs)
{
    Json a = Json::array();
    for (Alt x : xs)
        a.push_back(location_json(X[x]));
    return a;
}

inline std::vector<Alt> alts_from_json(const AlternativeSet& X, const Json& j, const std::string& path)
{
    detail::array_at(j, path);
    std::vector<Alt> out;
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(alt_from_json(X, j[k], path + "/" + std::to_string(k)));
    return out;
}

inline AlternativeSet alternatives_from_json(const Json& j, const std::string& path)
{
    detail::array_at(j, path);
    std::vector<Location> pts;
    for (std::size_t k = 0; k < j.size(); ++k)
        pts.push_back(location_from_json(j[k], path + "/" + std::to_string(k)));
    try {
        return AlternativeSet(std::move(pts));
    } catch (const ValidationError& e) {
        detail::fail_at(path, e.what());
    }
}

inline Json alternatives_json(const AlternativeSet& X)
{
    Json a = Json::array();
    for (const auto& p : X.points())
        a.push_back(location_json(p));
    return a;
}

inline Json ext_json(const AlternativeSet& X, const ExtElem& e)
{
    if (e.is_alt())
        return location_json(X[e.lo]);
    return Json::array({location_json(X[e.lo]), location_json(X[e.hi])});
}

inline ExtElem ext_from_json(const AlternativeSet& X, const Json& j, const std::string& path)
{
    if (j.is_array()) {
        if (j.size() != 2)
            detail::fail_at(path, "a pair needs exactly two locations");
        return ExtElem::pair(alt_from_json(X, j[0], path + "/0"), alt_from_json(X, j[1], path + "/1"));
    }
    return ExtElem::alt(alt_from_json(X, j, path));
}

inline Json coalition_json(Coalition c)
{
    Json a = Json::array();
    for (int id : coalition_ids(c))
        a.push_back(id);
    return a;
}

inline Json family_json(const MonotoneFamily& f)
{
    Json a = Json::array();
    for (Coalition c : f.minimal())
        a.push_back(coalition_json(c));
    return a;
}

/// Coalitions are taken as listed (no minimization), so the validator can
/// see a non-antichain listing.
inline MonotoneFamily family_from_json(const Json& j, int n, const std::string& path)
{
    detail::array_at(j, path);
    std::vector<Coalition> sets;
    for (std::size_t k = 0; k < j.size(); ++k) {
        std::string p = path + "/" + std::to_string(k);
        detail::array_at(j[k], p);
        Coalition c = 0;
        for (std::size_t t = 0; t < j[k].size(); ++t) {
            int id = detail::int_at(j[k][t], p + "/" + std::to_string(t));
            if (id < 1 || id > n)
                detail::fail_at(p + "/" + std::to_string(t), "agent id " + std::to_string(id) + " outside 1.." +
                                                                 std::to_string(n));
            c |= 1U << (id - 1);
        }
        sets.push_back(c);
    }
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    return MonotoneFamily::from_minimal_unchecked(std::move(sets));
}

inline Json roster_ids_json(const std::vector<int>& ids)
{
    Json a = Json::array();
    for (int id : ids)
        a.push_back(id);
    return a;
}

inline AgentRoster roster_from_json(const Json& j, const std::string& path)
{
    auto ids = [&](const char* name) {
        std::vector<int> out;
        const Json& a = detail::array_at(detail::field(j, name, path), path + "/" + name);
        for (std::size_t k = 0; k < a.size(); ++k)
            out.push_back(detail::int_at(a[k], path + "/" + name + "/" + std::to_string(k)));
        return out;
    };
    auto peaked = ids("peaked");
    auto dipped = ids("dipped");
    try {
        return AgentRoster(std::move(peaked), std::move(dipped));
    } catch (const ValidationError& e) {
        detail::fail_at(path, e.what());
    }
}

inline Json rulespec_json(const RuleSpec& spec)
{
    const auto& X = spec.X;
    Json j;
    j["X"] = alternatives_json(X);
    j["omega"] = alts_json(X, spec.omega.members());
    j["peaked"] = roster_ids_json(spec.roster.peaked());
    j["dipped"] = roster_ids_json(spec.roster.dipped());
    if (spec.omega_empty) {
        j["omega_empty"] = ext_json(X, *spec.omega_empty);
    } else {
        Json r = Json::array();
        for (const auto& e : spec.lcs.r_omega)
            r.push_back(ext_json(X, e));
        j["r_omega"] = r;
        Json L = Json::object();
        for (std::size_t k = 0; k < spec.lcs.r_omega.size(); ++k)
            L[elem_key(X, spec.lcs.r_omega[k])] = family_json(spec.lcs.families[k]);
        j["L"] = L;
    }
    Json W = Json::object();
    for (const auto& d : spec.deciders)
        W[elem_key(X, d.pair)] = family_json(d.winning);
    j["W"] = W;
    return j;
}

/// Parses the rule-spec format. Only shape errors are reported here;
/// structural conditions are left to validate().
inline RuleSpec rulespec_from_json(const Json& j)
{
    if (!j.is_object())
        detail::fail_at("", "a rule spec must be a JSON object");
    AlternativeSet X = alternatives_from_json(detail::field(j, "X", ""), "/X");
    AgentRoster roster = roster_from_json(j, "");
    auto om = alts_from_json(X, detail::field(j, "omega", ""), "/omega");
    std::sort(om.begin(), om.end());
    if (om.empty() || std::adjacent_find(om.begin(), om.end()) != om.end())
        detail::fail_at("/omega", "range must be a nonempty set of alternatives");
    Range omega(X.size(), om);
    ExtOrder order(omega);

    std::map<std::string, ExtElem> by_key;
    for (const auto& e : order.elements())
        by_key.emplace(elem_key(X, e), e);
    auto key_elem = [&](const std::string& key, const std::string& path) {
        auto it = by_key.find(key);
        if (it == by_key.end())
            detail::fail_at(path, "\"" + key + "\" is neither a range alternative nor a contiguous pair");
        return it->second;
    };
    auto in_order = [&](const ExtElem& e, const std::string& path) {
        if (!order.contains(e))
            detail::fail_at(path, "not a range alternative or contiguous pair");
        return e;
    };

    RuleSpec spec{X, roster, omega, {}, {}, std::nullopt};
    if (j.contains("omega_empty") && !j["omega_empty"].is_null()) {
        spec.omega_empty = in_order(ext_from_json(X, j["omega_empty"], "/omega_empty"), "/omega_empty");
        if (roster.peaked().empty()) {
            spec.lcs.r_omega = {*spec.omega_empty};
            spec.lcs.families = {MonotoneFamily::generated_by({0})};
        }
    }
    if (j.contains("r_omega")) {
        const Json& r = detail::array_at(j["r_omega"], "/r_omega");
        const Json& L = detail::field(j, "L", "");
        if (!L.is_object())
            detail::fail_at("/L", "expected an object keyed by r_omega elements");
        spec.lcs = {};
        for (std::size_t k = 0; k < r.size(); ++k) {
            std::string p = "/r_omega/" + std::to_string(k);
            ExtElem e = in_order(ext_from_json(X, r[k], p), p);
            std::string key = elem_key(X, e);
            if (!L.contains(key))
                detail::fail_at("/L", "missing family for \"" + key + "\"");
            spec.lcs.r_omega.push_back(e);
            spec.lcs.families.push_back(family_from_json(L[key], roster.n(), "/L/" + key));
        }
        for (const auto& [key, val] : L.items()) {
            ExtElem e = key_elem(key, "/L/" + key);
            if (std::find(spec.lcs.r_omega.begin(), spec.lcs.r_omega.end(), e) == spec.lcs.r_omega.end())
                detail::fail_at("/L/" + key, "family given for an element outside r_omega");
        }
    } else if (!spec.omega_empty) {
        detail::fail_at("", "missing \"r_omega\"");
    }
    if (j.contains("W")) {
        const Json& W = j["W"];
        if (!W.is_object())
            detail::fail_at("/W", "expected an object keyed by pairs");
        for (const auto& [key, val] : W.items())
            spec.deciders.push_back({key_elem(key, "/W/" + key), family_from_json(val, roster.n(), "/W/" + key)});
    }
    return spec;
}

inline Json violations_json(const std::vector<Violation>& vs)
{
    Json a = Json::array();
    for (const auto& v : vs)
        a.push_back({{"code", v.code}, {"detail", v.detail}});
    return a;
}

inline Json preference_json(const AlternativeSet& X, const Preference& p)
{
    return {{"kind", to_string(p.kind())}, {"ranking", alts_json(X, p.ranking())}};
}

inline Preference preference_from_json(const AlternativeSet& X, const Json& j, const std::string& path)
{
    const Json& k = detail::field(j, "kind", path);
    if (!k.is_string() || (k != "peaked" && k != "dipped"))
        detail::fail_at(path + "/kind", "expected \"peaked\" or \"dipped\"");
    auto ranking = alts_from_json(X, detail::field(j, "ranking", path), path + "/ranking");
    try {
        return Preference(k == "peaked" ? PrefKind::Peaked : PrefKind::Dipped, std::move(ranking));
    } catch (const ValidationError& e) {
        detail::fail_at(path, e.what());
    }
}

inline Json profile_json(const AlternativeSet& X, const Profile& profile)
{
    Json a = Json::array();
    for (const auto& p : profile)
        a.push_back(preference_json(X, p));
    return a;
}

inline Profile profile_from_json(const AlternativeSet& X, const Json& j, const std::string& path)
{
    detail::array_at(j, path);
    Profile out;
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(preference_from_json(X, j[k], path + "/" + std::to_string(k)));
    return out;
}

inline Json restricted_json(const AlternativeSet& X, const RestrictedProfile& rp)
{
    return {{"peaks", alts_json(X, rp.peaks)}, {"dips", alts_json(X, rp.dips)}};
}

inline RestrictedProfile restricted_from_json(const AlternativeSet& X, const Json& j, const std::string& path)
{
    return {alts_from_json(X, detail::field(j, "peaks", path), path + "/peaks"),
            alts_from_json(X, detail::field(j, "dips", path), path + "/dips")};
}

/// {"X", "peaked", "dipped", "grid"?, "outcomes"}; outcomes are locations
/// in profile-index order.
inline Json table_json(const RuleTable& t)
{
    Json j;
    j["X"] = alternatives_json(t.X);
    j["peaked"] = roster_ids_json(t.roster.peaked());
    j["dipped"] = roster_ids_json(t.roster.dipped());
    if (t.grid)
        j["grid"] = alts_json(t.X, t.grid->members());
    j["outcomes"] = alts_json(t.X, t.outcomes);
    return j;
}

inline RuleTable table_from_json(const Json& j)
{
    if (!j.is_object())
        detail::fail_at("", "a table must be a JSON object");
    RuleTable t;
    t.X = alternatives_from_json(detail::field(j, "X", ""), "/X");
    t.roster = roster_from_json(j, "");
    if (j.contains("grid")) {
        auto g = alts_from_json(t.X, j["grid"], "/grid");
        std::sort(g.begin(), g.end());
        if (g.empty() || std::adjacent_find(g.begin(), g.end()) != g.end())
            detail::fail_at("/grid", "grid must be a nonempty set of alternatives");
        t.grid = Range(t.X.size(), g);
    }
    t.outcomes = alts_from_json(t.X, detail::field(j, "outcomes", ""), "/outcomes");
    try {
        check_table(t);
    } catch (const ValidationError& e) {
        detail::fail_at("/outcomes", e.what());
    }
    return t;
}

inline Json witness_json(const AlternativeSet& X, const ManipulationWitness& w)
{
    Json dev = Json::array();
    auto ids = coalition_ids(w.deviators);
    for (std::size_t k = 0; k < ids.size(); ++k)
        dev.push_back({{"agent", ids[k]}, {"reports", preference_json(X, w.deviation[k])}});
    return {{"profile", profile_json(X, w.profile)},
            {"deviators", coalition_json(w.deviators)},
            {"deviation", dev},
            {"truthful_outcome", location_json(X[w.before])},
            {"manipulated_outcome", location_json(X[w.after])}};
}

inline Json pareto_json(const AlternativeSet& X, const ParetoWitness& w)
{
    return {{"profile", profile_json(X, w.profile)},
            {"chosen", location_json(X[w.chosen])},
            {"dominating", location_json(X[w.dominating])}};
}

inline Json report_json(const ExhaustiveReport& r)
{
    Json instance = {{"X", alternatives_json(r.X)},
                     {"peaked", roster_ids_json(r.roster.peaked())},
                     {"dipped", roster_ids_json(r.roster.dipped())},
                     {"profiles", r.profiles}};
    Json wit = Json::array();
    for (const auto& f : r.findings)
        wit.push_back({{"check", f.check}, {"detail", f.detail}, {"table", alts_json(r.X, f.table)}});
    return {{"instance", instance},
            {"candidates", r.candidates},
            {"pruned", r.pruned},
            {"search_nodes", r.search_nodes},
            {"sp_count", r.sp_count},
            {"gsp_count", r.gsp_count},
            {"characterized_count", r.characterized_count},
            {"decomposed_count", r.decomposed_count},
            {"passed", r.passed()},
            {"witnesses", wit}};
}

}  // namespace spfl
