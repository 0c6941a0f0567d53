// Exact rational coefficients. Arbitrary-precision arithmetic is delegated
// to boost::multiprecision; values are always stored normalized (gcd 1,
// positive denominator, zero as 0/1).
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "errors.hpp"

namespace algebroidkit {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// num/den as a normalized rational. Throws on zero denominator.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw Error("rational with zero denominator");
    return Rational(num) / Rational(den);
}

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "a" or "a/b" with optional leading sign. Whole string must match.
inline Rational parse_rational(std::string_view text) {
    std::size_t i = 0;
    auto digits = [&](const char* what) {
        std::size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (i == start) throw GrammarError(std::string("expected ") + what, start);
        return Integer(std::string(text.substr(start, i - start)));
    };
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
    Integer num = digits("integer");
    Integer den = 1;
    if (i < text.size() && text[i] == '/') {
        ++i;
        den = digits("denominator");
    }
    if (i != text.size()) throw GrammarError("trailing characters in rational", i);
    if (neg) num = -num;
    return make_rational(num, den);
}

} // namespace algebroidkit
