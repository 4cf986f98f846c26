#include "lip/rational.hpp"

#include <cctype>

namespace lip {

namespace {

// Decimal-only integer parse; strips leading zeros so boost's cpp_int does
// not read them as an octal prefix.
BigInt parse_bigint(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ValidationError("malformed integer literal '" + text + "'");
    s.erase(0, std::min(s.find_first_not_of('0'), s.size() - 1));
    BigInt value(s);
    return negative ? -value : value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ValidationError("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_bigint(text.substr(0, slash));
        BigInt den = parse_bigint(text.substr(slash + 1));
        if (den == 0) throw ValidationError("zero denominator in '" + text + "'");
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(parse_bigint(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
        throw ValidationError("malformed rational literal '" + text + "'");
    BigInt num = parse_bigint(digits);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(num, den);
}

std::string format_rational(const Rational& value) {
    if (denominator(value) == 1) return numerator(value).str();
    return numerator(value).str() + "/" + denominator(value).str();
}

Rational pow_rational(const Rational& base, unsigned long exponent) {
    Rational result = 1;
    Rational acc = base;
    unsigned long e = exponent;
    while (e > 0) {
        if (e & 1UL) result *= acc;
        e >>= 1UL;
        if (e > 0) acc *= acc;
    }
    return result;
}

BigInt ceil_rational(const Rational& value) {
    BigInt num = numerator(value);
    BigInt den = denominator(value);
    BigInt q = num / den;
    if (q * den < num) ++q;
    return q;
}

}  // namespace lip
