#include "zdistill/combinatorics.h"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace zdistill {

BigNat binom(int64_t n, int64_t k) {
    if (n < 0) {
        throw std::invalid_argument("binom: n must be non-negative");
    }
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    // result * (n - i) / (i + 1) is C(n, i + 1), so every division is exact.
    BigNat result = 1;
    for (int64_t i = 0; i < k; ++i) {
        result *= n - i;
        result /= i + 1;
    }
    return result;
}

bool vandermonde_holds(int64_t N, int64_t M, int64_t k) {
    if (M < 0 || M > N || k < 0 || k > N) {
        throw std::invalid_argument("vandermonde_holds: requires 0 <= M <= N and 0 <= k <= N");
    }
    BigNat sum = 0;
    for (int64_t j = 0; j <= k; ++j) {
        sum += binom(M, j) * binom(N - M, k - j);
    }
    return sum == binom(N, k);
}

BigNat numerator(const Rational &r) {
    return boost::multiprecision::numerator(r);
}

BigNat denominator(const Rational &r) {
    return boost::multiprecision::denominator(r);
}

std::string to_fraction_string(const Rational &r) {
    BigNat den = denominator(r);
    if (den == 1) {
        return numerator(r).str();
    }
    return numerator(r).str() + "/" + den.str();
}

namespace {

BigNat parse_integer(const std::string &text) {
    size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
    if (start == text.size()) {
        throw std::invalid_argument("parse_fraction: empty integer in '" + text + "'");
    }
    for (size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw std::invalid_argument("parse_fraction: bad digit in '" + text + "'");
        }
    }
    BigNat v(text.substr(start));
    return text[0] == '-' ? BigNat(-v) : v;
}

}  // namespace

Rational parse_fraction(const std::string &text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rational(parse_integer(text));
    }
    BigNat num = parse_integer(text.substr(0, slash));
    BigNat den = parse_integer(text.substr(slash + 1));
    if (den == 0) {
        throw std::invalid_argument("parse_fraction: zero denominator in '" + text + "'");
    }
    return Rational(num, den);
}

std::string to_decimal_string(const Rational &r, int significant) {
    if (significant < 1) {
        throw std::invalid_argument("to_decimal_string: need at least one significant digit");
    }
    if (r == 0) {
        return "0";
    }
    bool negative = r < 0;
    BigNat num = abs(numerator(r));
    BigNat den = denominator(r);

    // Find the decimal exponent e with 10^e <= |r| < 10^(e+1).
    BigNat ten = 10;
    auto at_least = [&](int e) {  // |r| >= 10^e
        BigNat lhs = num;
        BigNat rhs = den;
        if (e >= 0) {
            rhs *= boost::multiprecision::pow(ten, static_cast<unsigned>(e));
        } else {
            lhs *= boost::multiprecision::pow(ten, static_cast<unsigned>(-e));
        }
        return lhs >= rhs;
    };
    int exponent = 0;
    while (at_least(exponent + 1)) {
        ++exponent;
    }
    while (!at_least(exponent)) {
        --exponent;
    }

    // Scale so the integer part has exactly `significant` digits, then round half-even.
    int shift = significant - 1 - exponent;
    BigNat scaled_num = num;
    BigNat scaled_den = den;
    if (shift >= 0) {
        scaled_num *= boost::multiprecision::pow(ten, static_cast<unsigned>(shift));
    } else {
        scaled_den *= boost::multiprecision::pow(ten, static_cast<unsigned>(-shift));
    }
    BigNat q = scaled_num / scaled_den;
    BigNat rem = scaled_num % scaled_den;
    if (2 * rem > scaled_den || (2 * rem == scaled_den && (q & 1) == 1)) {
        ++q;
    }
    std::string digits = q.str();
    if (static_cast<int>(digits.size()) > significant) {
        // Rounding carried into a new digit, e.g. 9.999995 -> 10.0000.
        digits.pop_back();
        ++exponent;
    }

    std::string out;
    if (exponent < -4 || exponent >= significant) {
        out = digits.substr(0, 1);
        std::string frac = digits.substr(1);
        while (!frac.empty() && frac.back() == '0') {
            frac.pop_back();
        }
        if (!frac.empty()) {
            out += "." + frac;
        }
        out += exponent < 0 ? "e-" : "e+";
        std::string e = std::to_string(std::abs(exponent));
        out += (e.size() < 2 ? "0" : "") + e;
    } else if (exponent < 0) {
        out = "0." + std::string(static_cast<size_t>(-exponent - 1), '0') + digits;
    } else {
        out = digits.substr(0, static_cast<size_t>(exponent) + 1);
        if (static_cast<int>(digits.size()) > exponent + 1) {
            out += "." + digits.substr(static_cast<size_t>(exponent) + 1);
        }
    }
    if (out.find('.') != std::string::npos && out.find('e') == std::string::npos) {
        while (out.back() == '0') {
            out.pop_back();
        }
        if (out.back() == '.') {
            out.pop_back();
        }
    }
    return negative ? "-" + out : out;
}

}  // namespace zdistill
