#pragma once

#include <gmpxx.h>

#include <string>

#include "trimat/errors.hpp"

namespace trimat {

// The two exact scalar types used throughout. GMP's C++ classes already
// keep rationals in canonical form (lowest terms, positive denominator),
// which is exactly the invariant we need.
using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw ZeroDenominator();
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline BigInt to_integer(const Rational& q) {
    if (!is_integer(q)) throw std::domain_error("rational " + q.get_str() + " is not an integer");
    return q.get_num();
}

}  // namespace trimat
