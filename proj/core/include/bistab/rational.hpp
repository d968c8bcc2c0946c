#pragma once

// Exact arithmetic carriers. Every threshold and sign decision in this
// project is made on arbitrary-precision rationals; doubles only appear
// in reports and quadrature.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace bistab {

using BigInt = boost::multiprecision::cpp_int;

// Invariants (maintained by the backend after every operation):
//   denominator > 0, gcd(|numerator|, denominator) = 1.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational rat(long long n, long long d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    return Rational(BigInt(n), BigInt(d));
}

inline int sign(const Rational& r) { return r.sign(); }
inline int sign(const BigInt& z) { return z.sign(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rational_pow(const Rational& base, unsigned exp) {
    Rational acc(1);
    Rational b = base;
    unsigned e = exp;
    while (e) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// "a/b" or "a"; also accepts plain decimal strings like "1.25".
Rational parse_rational(const std::string& text);

inline std::string rational_str(const Rational& r) {
    return num(r).str() + "/" + den(r).str();
}

}  // namespace bistab
