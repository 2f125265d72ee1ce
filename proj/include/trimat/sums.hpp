#pragma once

// Closed-form partial sums of negatively indexed terms,
//
//   sum_{i=0}^{n-1} S(-m*i - j)
//
// for the scalar and matrix T/K families, with a literal term-by-term
// oracle. All closed forms share the denominator K(-m) - K(m).

#include <variant>

#include "trimat/matrix.hpp"
#include "trimat/scalar.hpp"
#include "trimat/sequence.hpp"

namespace trimat {

enum class Level { Scalar, Matrix };

struct SumQuery {
    Family family = Family::T;
    Level level = Level::Scalar;
    long long m = 1;  // stride, >= 1
    long long j = 0;  // offset, >= 0
    long long n = 1;  // term count, >= 1

    void validate() const;  // throws std::invalid_argument
};

using SumValue = std::variant<Rational, RatMat3>;

// The scalar K closed form's first correction term can carry index -m-j
// (mirroring the matrix identity and the T form) or -m+j. MinusJ is the
// one that matches the oracle on the whole grid; PlusJ is kept so the
// discrepancy stays observable. Only the (K, scalar) path reads this.
enum class KCorrection { MinusJ, PlusJ };

SumValue sum_closed(const SumQuery& q, KCorrection correction = KCorrection::MinusJ);
SumValue sum_direct(const SumQuery& q);

// Alternative matrix closed form for the T family:
//   (T(-mn+m-j) - T(m-j)) * (T(0) - T(m))^{-1}
RatMat3 sum_matrix_form(long long m, long long j, long long n);

}  // namespace trimat
