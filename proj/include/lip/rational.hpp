#ifndef LIP_RATIONAL_HPP
#define LIP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace lip {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses "12", "-3", "0.01" (decimal, exact), or "3/4".
Rational parse_rational(const std::string& text);

// Decimal-friendly round trip: integers print bare, otherwise "num/den".
std::string format_rational(const Rational& value);

Rational pow_rational(const Rational& base, unsigned long exponent);

// Smallest integer >= value.
BigInt ceil_rational(const Rational& value);

}  // namespace lip

#endif
