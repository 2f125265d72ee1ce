#include "trimat/sums.hpp"

#include <stdexcept>

namespace trimat {
namespace {

BigInt scalar_at(Family f, long long idx) {
    return f == Family::T ? tribonacci(idx) : tribonacci_lucas(idx);
}

IntMat3 matrix_at(Family f, long long idx) {
    return f == Family::T ? t_matrix(idx) : k_matrix(idx);
}

Rational denominator(long long m) {
    BigInt d = tribonacci_lucas(-m) - tribonacci_lucas(m);
    if (d == 0) throw ZeroDenominator("K(-m) = K(m) at m = " + std::to_string(m));
    return Rational(d);
}

}  // namespace

void SumQuery::validate() const {
    if (m < 1) throw std::invalid_argument("stride m must be at least 1");
    if (j < 0) throw std::invalid_argument("offset j must be non-negative");
    if (n < 1) throw std::invalid_argument("term count n must be at least 1");
}

SumValue sum_closed(const SumQuery& q, KCorrection correction) {
    q.validate();
    const long long m = q.m, j = q.j, n = q.n;
    const Rational den = denominator(m);
    const BigInt one_minus_km = 1 - tribonacci_lucas(-m);

    if (q.level == Level::Scalar) {
        // First correction index: -m-j everywhere, except the PlusJ variant
        // of the scalar K form.
        const long long c1 = (q.family == Family::K && correction == KCorrection::PlusJ) ? -m + j
                                                                                         : -m - j;
        BigInt bracket = scalar_at(q.family, -m * n + m - j) + scalar_at(q.family, -m * n - m - j) +
                         one_minus_km * scalar_at(q.family, -m * n - j) -
                         (scalar_at(q.family, c1) + scalar_at(q.family, -j + m) +
                          one_minus_km * scalar_at(q.family, -j));
        return Rational(bracket) / den;
    }

    IntMat3 bracket = matrix_at(q.family, -m * n + m - j) + matrix_at(q.family, -m * n - m - j) +
                      matrix_at(q.family, -m * n - j) * one_minus_km -
                      (matrix_at(q.family, -m - j) + matrix_at(q.family, -j + m) +
                       matrix_at(q.family, -j) * one_minus_km);
    RatMat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out.at(r, c) = Rational(bracket.at(r, c)) / den;
    return out;
}

SumValue sum_direct(const SumQuery& q) {
    q.validate();
    // One linear pass over the whole index span; the terms sit at
    // -j, -m-j, ..., -m(n-1)-j inside it.
    const BuiltinSeq seq = q.family == Family::T ? BuiltinSeq::Tribonacci
                                                 : BuiltinSeq::TribonacciLucas;
    const long long deepest = -q.m * (q.n - 1) - q.j;

    if (q.level == Level::Scalar) {
        std::vector<BigInt> vals = sequence_slice(seq, deepest, -q.j);
        BigInt acc = 0;
        for (long long i = 0; i < q.n; ++i)
            acc += vals[static_cast<size_t>(-q.m * i - q.j - deepest)];
        return Rational(acc);
    }

    std::vector<BigInt> vals = sequence_slice(seq, deepest - 3, -q.j + 1);
    IntMat3 acc;
    for (long long i = 0; i < q.n; ++i) {
        const size_t at = static_cast<size_t>(-q.m * i - q.j - (deepest - 3));
        acc = acc + matrix_from_window({vals[at + 1], vals[at], vals[at - 1], vals[at - 2], vals[at - 3]});
    }
    return to_rational(acc);
}

RatMat3 sum_matrix_form(long long m, long long j, long long n) {
    SumQuery{Family::T, Level::Matrix, m, j, n}.validate();
    IntMat3 shifted = t_matrix(-m * n + m - j) - t_matrix(m - j);
    return to_rational(shifted) * adjugate_inverse(to_rational(t_matrix(0) - t_matrix(m)));
}

}  // namespace trimat
