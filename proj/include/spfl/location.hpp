#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

#include "spfl/error.hpp"

namespace spfl {

/// Exact point on the line. Integers are the common case; rationals
/// cover anything else without ever touching floating point.
using Location = boost::rational<std::int64_t>;

/// "3" or "7/2".
inline std::string to_string(const Location& x)
{
    if (x.denominator() == 1)
        return std::to_string(x.numerator());
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

/// Accepts "3", "-2", "7/2".
inline Location parse_location(const std::string& text)
{
    auto parse_int = [&](const std::string& s) -> std::int64_t {
        if (s.empty())
            throw ValidationError("empty number in location '" + text + "'");
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            throw ValidationError("not an exact number: '" + text + "'");
        }
        if (used != s.size())
            throw ValidationError("not an exact number: '" + text + "'");
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string::npos)
        return Location(parse_int(text));
    auto den = parse_int(text.substr(slash + 1));
    if (den == 0)
        throw ValidationError("zero denominator in location '" + text + "'");
    return Location(parse_int(text.substr(0, slash)), den);
}

}  // namespace spfl
