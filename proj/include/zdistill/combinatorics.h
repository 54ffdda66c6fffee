#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace zdistill {

/// Arbitrary-precision non-negative integer. Binomials and state counts live here.
using BigNat = boost::multiprecision::cpp_int;

/// Exact rational, always in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// C(n, k). Returns 0 when k < 0 or k > n, so summations over shifted
/// indices need no boundary cases.
BigNat binom(int64_t n, int64_t k);

/// Checks sum_{j=0..k} C(M, j) C(N - M, k - j) == C(N, k) by exact summation.
bool vandermonde_holds(int64_t N, int64_t M, int64_t k);

BigNat numerator(const Rational &r);
BigNat denominator(const Rational &r);

/// "p/q", or "p" when the denominator is one.
std::string to_fraction_string(const Rational &r);

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed text or a
/// zero denominator.
Rational parse_fraction(const std::string &text);

/// Decimal rendering with `significant` digits, rounded half-to-even from the
/// exact value. Display only; never round-tripped.
std::string to_decimal_string(const Rational &r, int significant = 6);

}  // namespace zdistill
