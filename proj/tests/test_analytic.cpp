#include <cstdlib>

#include "doctest.h"
#include "trimat/analytic.hpp"

using namespace trimat;

namespace {

// 60 decimal digits of the Tribonacci constant, for pinning alpha.
const char* kAlphaDigits = "1.83928675521416113255185256465328660042417874609759224677876";

Real tolerance(long prec) { return Real::pow2(-prec / 2, prec); }

Real entry_error(const RealMat3& approx, const IntMat3& exact, long prec) {
    Real worst = Real::of(0L, prec);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            Real d = (approx[r][c] - Real::of(exact.at(r, c), prec)).abs();
            if (d > worst) worst = d;
        }
    return worst;
}

Real coeff_distance(const ComplexMat3& a, const ComplexMat3& b, long prec) {
    Real worst = Real::of(0L, prec);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            Real d = (a[r][c] - b[r][c]).abs();
            if (d > worst) worst = d;
        }
    return worst;
}

ComplexMat3 cmul(const ComplexMat3& a, const ComplexMat3& b) {
    ComplexMat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            Complex sum(Real::of(0L, a[r][c].real().precision()));
            for (int k = 0; k < 3; ++k) sum = sum + a[r][k] * b[k][c];
            out[r][c] = sum;
        }
    return out;
}

ComplexMat3 int_cmat(const IntMat3& m, long prec) {
    ComplexMat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out[r][c] = Complex(Real::of(m.at(r, c), prec));
    return out;
}

Complex eval_cubic(const Complex& x) {
    long p = x.real().precision();
    Complex one(Real::of(1L, p));
    return ((x - one) * x - one) * x - one;
}

ComplexMat3 add_eval(const BinetCoeffs& co, const Complex& x, const Complex& y, const Complex& z) {
    ComplexMat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out[r][c] = co.A[r][c] * x + co.B[r][c] * y + co.C[r][c] * z;
    return out;
}

ComplexMat3 add_result(const BinetCoeffs& co) {
    ComplexMat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out[r][c] = co.A[r][c] + co.B[r][c] + co.C[r][c];
    return out;
}

}  // namespace

TEST_CASE("tribonacci_roots pins alpha and the conjugate pair") {
    for (long prec : {64L, 128L, 256L, 512L}) {
        CubicRoots roots = tribonacci_roots(prec);
        CHECK(roots.precision_bits == prec);
        CHECK(roots.alpha.precision() == prec);

        // the frozen decimal reference itself carries ~199 bits
        Real reference = Real::from_string(kAlphaDigits, prec + 16);
        CHECK((roots.alpha - reference).abs() < Real::pow2(-std::min(prec, 190L) + 8, prec));

        // residual of the cubic at each root
        Real bound = Real::pow2(-prec + 8, prec);
        CHECK(eval_cubic(Complex(roots.alpha)).abs() < bound);
        CHECK(eval_cubic(roots.beta).abs() < bound);
        CHECK(eval_cubic(roots.gamma).abs() < bound);

        // gamma is the conjugate; alpha dominates
        CHECK(roots.gamma.real().compare(roots.beta.real()) == 0);
        CHECK((roots.gamma.imag() + roots.beta.imag()).is_zero());
        CHECK(roots.beta.abs() < roots.alpha);
    }
}

TEST_CASE("root symmetric functions") {
    const long prec = 192;
    CubicRoots roots = tribonacci_roots(prec);
    Real tol = tolerance(prec);
    Complex alpha(roots.alpha);

    // alpha + beta + gamma = 1 (checked through the real parts)
    CHECK((roots.alpha + roots.beta.real() + roots.gamma.real() - Real::of(1L, prec)).abs() < tol);
    // alpha * |beta|^2 = alpha*beta*gamma = 1
    CHECK((roots.alpha * roots.beta.norm() - Real::of(1L, prec)).abs() < tol);
    // pairwise sum: ab + ag + bg = -1
    Complex pairwise = alpha * roots.beta + alpha * roots.gamma + roots.beta * roots.gamma;
    CHECK((pairwise.real() + Real::of(1L, prec)).abs() < tol);
    CHECK(pairwise.imag().abs() < tol);
}

TEST_CASE("alpha agrees with the nested-radical closed form") {
    const long prec = 256;
    CubicRoots roots = tribonacci_roots(prec);
    Real r33 = Real::of(33L, prec).sqrt();
    Real c1 = (Real::of(19L, prec) + Real::of(3L, prec) * r33).cbrt();
    Real c2 = (Real::of(19L, prec) - Real::of(3L, prec) * r33).cbrt();
    Real radical = (Real::of(1L, prec) + c1 + c2) / Real::of(3L, prec);
    CHECK((roots.alpha - radical).abs() < tolerance(prec));
}

TEST_CASE("binet values recover the exact tables") {
    Real tiny = Real::of(1e-20, 192);
    CHECK((binet_t(10, 192) - Real::of(149L, 192)).abs() < tiny);
    CHECK((binet_t(-8, 192) - Real::of(4L, 192)).abs() < tiny);
    CHECK(binet_t(0, 128).abs() < Real::of(1e-15, 128));
    CHECK((binet_k(7, 192) - Real::of(71L, 192)).abs() < tiny);
    CHECK((binet_k(-9, 192) - Real::of(23L, 192)).abs() < tiny);
    CHECK((binet_k(0, 128) - Real::of(3L, 128)).abs() < Real::of(1e-15, 128));
}

TEST_CASE("imaginary residue stays below 2^(-p/2)") {
    for (long long n : {-40LL, -7LL, 0LL, 9LL, 40LL}) {
        long prec = 128 + 2 * static_cast<long>(std::llabs(n));
        CHECK(binet_t_sum(n, prec).imag().abs() < tolerance(prec));
        CHECK(binet_k_sum(n, prec).imag().abs() < tolerance(prec));
    }
}

TEST_CASE("precision scaling keeps absolute error under 1e-10") {
    for (long long n = -60; n <= 60; n += 5) {
        long prec = 128 + 2 * static_cast<long>(std::llabs(n));
        Real bound = Real::of(1e-10, prec);
        CHECK((binet_t(n, prec) - Real::of(tribonacci(n), prec)).abs() < bound);
        CHECK((binet_k(n, prec) - Real::of(tribonacci_lucas(n), prec)).abs() < bound);
    }
}

TEST_CASE("doubling precision shrinks the binet error") {
    for (long long n : {5LL, 17LL, -21LL, 33LL}) {
        // compare against the last nonzero error; a lucky exact hit at one
        // precision must not count as regression at the next
        Real envelope = Real::of(1L, 64);
        Real last_err = envelope;
        for (long prec : {96L, 192L, 384L, 768L}) {
            Real err = (binet_t(n, prec) - Real::of(tribonacci(n), prec)).abs().round_to(1024);
            CHECK(err <= envelope);
            if (!err.is_zero()) envelope = err;
            last_err = err;
        }
        CHECK(last_err < Real::pow2(-300, 1024));
    }
}

TEST_CASE("rounded accessors return exact integers or fail loudly") {
    RoundedValue v = binet_t_rounded(40, 128);
    CHECK(v.value == tribonacci(40));
    CHECK(v.residual < Real::of(1e-12, 128));

    RoundedValue k = binet_k_rounded(-35, 198);
    CHECK(k.value == tribonacci_lucas(-35));

    // far too little precision for an index this deep
    CHECK_THROWS_AS(binet_t_rounded(220, 64), RoundingError);
}

TEST_CASE("binet coefficient matrices") {
    const long prec = 256;
    Real tol = Real::pow2(-96, prec);

    BinetCoeffs tp = binet_coefficients(Family::T, Direction::Positive, prec);
    BinetCoeffs tn = binet_coefficients(Family::T, Direction::Negative, prec);
    BinetCoeffs kp = binet_coefficients(Family::K, Direction::Positive, prec);
    BinetCoeffs kn = binet_coefficients(Family::K, Direction::Negative, prec);

    // the two derivations give the same coefficients
    CHECK(coeff_distance(tp.A, tn.A, prec) < tol);
    CHECK(coeff_distance(tp.B, tn.B, prec) < tol);
    CHECK(coeff_distance(tp.C, tn.C, prec) < tol);
    CHECK(coeff_distance(kp.A, kn.A, prec) < tol);
    CHECK(coeff_distance(kp.B, kn.B, prec) < tol);
    CHECK(coeff_distance(kp.C, kn.C, prec) < tol);

    // A + B + C evaluates the Binet form at n = 0
    CHECK(coeff_distance(add_result(tp), int_cmat(t_matrix(0), prec), prec) < tol);
    CHECK(coeff_distance(add_result(kp), int_cmat(k_matrix(0), prec), prec) < tol);

    // idempotents that annihilate each other
    CHECK(coeff_distance(cmul(tp.A, tp.A), tp.A, prec) < tol);
    CHECK(coeff_distance(cmul(tp.B, tp.B), tp.B, prec) < tol);
    CHECK(coeff_distance(cmul(tp.C, tp.C), tp.C, prec) < tol);
    ComplexMat3 zero = int_cmat(IntMat3{}, prec);
    CHECK(coeff_distance(cmul(tp.A, tp.B), zero, prec) < tol);
    CHECK(coeff_distance(cmul(tp.B, tp.A), zero, prec) < tol);
    CHECK(coeff_distance(cmul(tp.A, tp.C), zero, prec) < tol);
    CHECK(coeff_distance(cmul(tp.C, tp.B), zero, prec) < tol);

    // K coefficients evaluated at n = -1 give the exact matrix
    CubicRoots roots = tribonacci_roots(prec);
    ComplexMat3 km1 = add_eval(kn, Complex(roots.alpha).pow_int(-1), roots.beta.pow_int(-1),
                               roots.gamma.pow_int(-1));
    CHECK(coeff_distance(km1, int_cmat(k_matrix(-1), prec), prec) < tol);
}

TEST_CASE("matrix binet approximates the exact matrices") {
    CHECK(entry_error(binet_matrix(Family::T, -2, 192), t_matrix(-2), 192) < Real::of(1e-10, 192));
    CHECK(entry_error(binet_matrix(Family::T, 0, 128), t_matrix(0), 128) < Real::of(1e-10, 128));
    CHECK(entry_error(binet_matrix(Family::K, -3, 256), k_matrix(-3), 256) < Real::of(1e-10, 256));
    for (long long n = -30; n <= 30; n += 6) {
        long prec = 128 + 2 * static_cast<long>(std::llabs(n));
        CHECK(entry_error(binet_matrix(Family::T, n, prec), t_matrix(n), prec) < Real::of(1e-10, prec));
        CHECK(entry_error(binet_matrix(Family::K, n, prec), k_matrix(n), prec) < Real::of(1e-10, prec));
    }
}

TEST_CASE("consecutive ratios converge to alpha") {
    CubicRoots roots = tribonacci_roots(128);
    CHECK((consecutive_ratio(100, 128) - roots.alpha).abs() < Real::of(1e-15, 128));
    CHECK((consecutive_ratio(5, 64) - Real::of(make_rational(13, 7), 64)).abs() < Real::pow2(-60, 64));
    CHECK((consecutive_ratio(1, 64) - Real::of(1L, 64)).abs().is_zero());
    CHECK_THROWS_AS(consecutive_ratio(0, 64), std::invalid_argument);
}

TEST_CASE("precision below 64 bits is rejected") {
    CHECK_THROWS_AS(tribonacci_roots(32), std::invalid_argument);
    CHECK_THROWS_AS(binet_t(3, 63), std::invalid_argument);
    CHECK_THROWS_AS(consecutive_ratio(3, 10), std::invalid_argument);
}
