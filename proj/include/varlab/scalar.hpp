#pragma once

// Exact rational scalars. Rational is the only field backend; code that is
// generic over the field takes a Field template parameter that must behave
// like an ordered field with exact ==.

#include <boost/multiprecision/gmp.hpp>

#include <regex>
#include <string>
#include <string_view>

#include "varlab/words.hpp"

namespace varlab {

using Rational = boost::multiprecision::mpq_rational;

/// Parses "n", "-n" or "n/d".
inline Rational parse_rational(std::string_view s) {
    std::string text(s);
    static const std::regex shape(R"(-?[0-9]+(/[0-9]+)?)");
    if (!std::regex_match(text, shape)) throw Error("malformed rational '" + text + "'");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(boost::multiprecision::mpz_int(text));
        boost::multiprecision::mpz_int num(text.substr(0, slash)), den(text.substr(slash + 1));
        if (den == 0) throw Error("zero denominator in '" + text + "'");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const Error*>(&e)) throw;
        throw Error("malformed rational '" + text + "'");
    }
}

/// "n" for integers, "n/d" otherwise.
inline std::string format_rational(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

}  // namespace varlab
