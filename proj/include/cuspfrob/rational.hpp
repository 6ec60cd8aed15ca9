#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace cuspfrob {

// All coefficient arithmetic in the library is exact. GMP supplies the
// arbitrary-precision integer and rational types; mpq_class values are kept
// canonical (lowest terms, positive denominator) by the wrappers below.
using Integer  = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rat(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Canonical text form: "p" for integers, "p/q" otherwise, q > 0.
inline std::string rat_str(const Rational& r) { return r.get_str(); }

// Parses "p" or "p/q"; rejects malformed input and zero denominators.
inline Rational rat_parse(const std::string& s) {
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("rational with zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline long to_long(const Rational& r) {
    if (!is_integer(r) || !r.get_num().fits_slong_p())
        throw std::domain_error("rational does not fit a machine integer");
    return r.get_num().get_si();
}

}  // namespace cuspfrob
