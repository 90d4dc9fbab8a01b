#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace sldyn {

// Exact arbitrary-precision rational. Always stored in lowest terms with a
// positive denominator; every comparison in the engine is exact.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p", "p/q", and plain decimals such as "1.75" or "-0.5".
// Returns nullopt on malformed input; never goes through floating point.
std::optional<Rational> parse_rational(const std::string& text);

// Throwing variant for contexts where malformed input is a caller bug.
inline Rational parse_rational_or_throw(const std::string& text) {
    auto r = parse_rational(text);
    if (!r)
        throw std::invalid_argument("malformed rational: '" + text + "'");
    return *r;
}

inline std::optional<Rational> parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t')
            s.push_back(c);
    if (s.empty())
        return std::nullopt;

    bool negative = false;
    std::size_t pos = 0;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        pos = 1;
    }

    auto digits = [&](std::size_t from, std::size_t to) -> std::optional<Integer> {
        if (from >= to)
            return std::nullopt;
        Integer v = 0;
        for (std::size_t i = from; i < to; ++i) {
            if (s[i] < '0' || s[i] > '9')
                return std::nullopt;
            v = v * 10 + (s[i] - '0');
        }
        return v;
    };

    auto slash = s.find('/', pos);
    auto dot = s.find('.', pos);
    if (slash != std::string::npos && dot != std::string::npos)
        return std::nullopt;

    Rational result;
    if (slash != std::string::npos) {
        auto num = digits(pos, slash);
        auto den = digits(slash + 1, s.size());
        if (!num || !den || *den == 0)
            return std::nullopt;
        result = Rational(*num, *den);
    } else if (dot != std::string::npos) {
        auto whole = digits(pos, dot);
        auto frac_len = s.size() - dot - 1;
        auto frac = digits(dot + 1, s.size());
        if (!whole || !frac)
            return std::nullopt;
        Integer scale = 1;
        for (std::size_t i = 0; i < frac_len; ++i)
            scale *= 10;
        result = Rational(*whole * scale + *frac, scale);
    } else {
        auto num = digits(pos, s.size());
        if (!num)
            return std::nullopt;
        result = Rational(*num);
    }
    if (negative)
        result = -result;
    return result;
}

}  // namespace sldyn
