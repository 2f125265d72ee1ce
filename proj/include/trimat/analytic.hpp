#pragma once

// Numeric Binet evaluation from the roots of x^3 - x^2 - x - 1: alpha is
// the real Tribonacci constant, beta and gamma the conjugate complex
// pair. Everything carries an explicit binary precision and is
// cross-validated against the exact engine by the tests.

#include <mpfr.h>

#include <array>
#include <string>

#include "trimat/errors.hpp"
#include "trimat/matrix.hpp"
#include "trimat/scalar.hpp"
#include "trimat/sequence.hpp"

namespace trimat {

// Arbitrary-precision binary float (RAII wrapper around mpfr_t). Binary
// operations round to the wider operand's precision.
class Real {
public:
    Real() : Real(64) {}
    explicit Real(long precision_bits);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    static Real of(double v, long precision_bits);
    static Real of(long v, long precision_bits);
    static Real of(const BigInt& v, long precision_bits);
    static Real of(const Rational& v, long precision_bits);
    static Real from_string(const std::string& decimal, long precision_bits);
    static Real pow2(long e, long precision_bits);  // 2^e

    long precision() const;
    Real round_to(long precision_bits) const;

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    Real operator-() const;

    Real abs() const;
    Real sqrt() const;
    Real cbrt() const;
    Real pow_int(long e) const;

    int sign() const;                  // -1, 0, +1
    long exponent() const;             // base-2 exponent; meaningless for zero
    int compare(const Real& o) const;  // sign of *this - o
    bool operator<(const Real& o) const { return compare(o) < 0; }
    bool operator<=(const Real& o) const { return compare(o) <= 0; }
    bool operator>(const Real& o) const { return compare(o) > 0; }
    bool operator>=(const Real& o) const { return compare(o) >= 0; }
    bool is_zero() const { return sign() == 0; }

    BigInt round_nearest() const;
    double to_double() const;
    std::string str(int digits = 20) const;

private:
    mpfr_t v_;

    friend class Complex;
};

class Complex {
public:
    Complex() = default;
    Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit Complex(Real re) : re_(std::move(re)), im_(Real::of(0L, re_.precision())) {}

    const Real& real() const { return re_; }
    const Real& imag() const { return im_; }

    friend Complex operator+(const Complex& a, const Complex& b);
    friend Complex operator-(const Complex& a, const Complex& b);
    friend Complex operator*(const Complex& a, const Complex& b);
    friend Complex operator/(const Complex& a, const Complex& b);
    Complex operator-() const;

    Complex conj() const;
    Real norm() const;  // re^2 + im^2
    Real abs() const;
    Complex pow_int(long e) const;

private:
    Real re_;
    Real im_;
};

struct CubicRoots {
    Real alpha;     // ~1.839287, the dominant real root
    Complex beta;   // upper-half-plane root
    Complex gamma;  // conjugate of beta
    long precision_bits = 0;
};

// alpha by bisection + Newton on [1, 2]; beta, gamma from the quadratic
// x^2 - (1 - alpha) x + 1/alpha they satisfy (root sums/products).
CubicRoots tribonacci_roots(long precision_bits);

// Full three-term Binet sums; the imaginary part is rounding residue.
Complex binet_t_sum(long long n, long precision_bits);
Complex binet_k_sum(long long n, long precision_bits);
Real binet_t(long long n, long precision_bits);
Real binet_k(long long n, long precision_bits);

// Nearest integer plus how far the float landed from it; loud failure when
// the residual is no longer negligible.
struct RoundedValue {
    BigInt value;
    Real residual;
};
RoundedValue binet_t_rounded(long long n, long precision_bits);  // throws RoundingError
RoundedValue binet_k_rounded(long long n, long precision_bits);

enum class Direction { Positive, Negative };

using ComplexMat3 = std::array<std::array<Complex, 3>, 3>;
using RealMat3 = std::array<std::array<Real, 3>, 3>;

// Coefficient matrices of the matrix Binet form S(n) = A a^n + B b^n + C c^n.
// Positive direction derives them from the index 0..2 seed matrices,
// negative direction from the index 0..-2 ones; the two agree.
struct BinetCoeffs {
    ComplexMat3 A, B, C;
    Family family = Family::T;
    Direction direction = Direction::Negative;
    long precision_bits = 0;
};

BinetCoeffs binet_coefficients(Family family, Direction direction, long precision_bits);

// Matrix Binet evaluation; approximates t_matrix(n) / k_matrix(n).
RealMat3 binet_matrix(Family family, long long n, long precision_bits);

// T_{n+1} / T_n as a float; converges to alpha.
Real consecutive_ratio(long long n, long precision_bits);  // throws ZeroDenominator

}  // namespace trimat
