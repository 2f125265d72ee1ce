#include "trimat/matrix.hpp"

#include <cstdlib>

#include "trimat/sequence.hpp"

namespace trimat {

RatMat3 to_rational(const IntMat3& m) {
    RatMat3 q;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) q.at(r, c) = Rational(m.at(r, c));
    return q;
}

bool is_integral(const RatMat3& m) {
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (!is_integer(m.at(r, c))) return false;
    return true;
}

IntMat3 to_integer(const RatMat3& m) {
    IntMat3 z;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) z.at(r, c) = to_integer(m.at(r, c));
    return z;
}

RatMat3 adjugate_inverse(const RatMat3& m) {
    Rational d = m.det();
    if (d == 0) throw SingularMatrix();
    RatMat3 adj = m.adjugate();
    RatMat3 inv;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) inv.at(r, c) = adj.at(r, c) / d;
    return inv;
}

IntMat3 mat_pow(const IntMat3& base, unsigned long long e) {
    IntMat3 result = IntMat3::identity();
    IntMat3 b = base;
    while (e > 0) {
        if (e & 1) result = result * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return result;
}

RatMat3 mat_pow(const RatMat3& base, long long e) {
    if (e == 0) return RatMat3::identity();
    RatMat3 b = e < 0 ? adjugate_inverse(base) : base;
    unsigned long long n = e < 0 ? 0ull - static_cast<unsigned long long>(e)
                                 : static_cast<unsigned long long>(e);
    RatMat3 result = RatMat3::identity();
    while (n > 0) {
        if (n & 1) result = result * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return result;
}

IntMat3 matrix_from_window(const std::array<BigInt, 5>& w) {
    return IntMat3::from_rows({{{w[0], w[1] + w[2], w[1]},
                                {w[1], w[2] + w[3], w[2]},
                                {w[2], w[3] + w[4], w[3]}}});
}

IntMat3 t_matrix(long long n) { return matrix_from_window(tribonacci_window(n)); }

IntMat3 k_matrix(long long n) { return matrix_from_window(tribonacci_lucas_window(n)); }

IntMat3 kk_product_expansion(long long m, long long n, KKForm form) {
    const long long s = m + n;
    struct Term {
        int coeff;
        int shift;
    };
    static constexpr Term kFormA[] = {{9, 2}, {-12, 1}, {-2, 0}, {4, -1}, {1, -2}};
    static constexpr Term kFormB[] = {{1, 0}, {4, -1}, {10, -2}, {12, -3}, {9, -4}};
    static constexpr Term kFormC[] = {{1, 0}, {-8, 1}, {18, 2}, {-8, 3}, {1, 4}};
    const Term* terms = form == KKForm::A ? kFormA : form == KKForm::B ? kFormB : kFormC;

    IntMat3 acc;
    for (int i = 0; i < 5; ++i) acc = acc + t_matrix(-s + terms[i].shift) * BigInt(terms[i].coeff);
    return acc;
}

}  // namespace trimat
