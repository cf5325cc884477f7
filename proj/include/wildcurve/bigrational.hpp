#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace wildcurve {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigRational make_rational(long n, long d = 1) {
    if (d == 0) throw std::domain_error("zero denominator");
    BigRational r(n, d);
    r.canonicalize();
    return r;
}

inline BigRational parse_rational(const std::string& s) {
    BigRational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: '" + s + "'");
    if (r.get_den() == 0) throw std::domain_error("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const BigRational& r) { return r.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

inline bool is_zero(const BigRational& r) { return sgn(r) == 0; }

inline BigRational rational_pow(const BigRational& b, long e) {
    BigRational out = 1, base = b;
    if (e < 0) {
        if (sgn(b) == 0) throw std::domain_error("zero to a negative power");
        base = 1 / b;
        e = -e;
    }
    while (e) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

}  // namespace wildcurve
