#include "trimat/analytic.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace trimat {
namespace {

long clamp_prec(long p) { return std::max<long>(p, MPFR_PREC_MIN); }

void require_precision(long precision_bits) {
    if (precision_bits < 64) throw std::invalid_argument("precision_bits must be at least 64");
}

}  // namespace

Real::Real(long precision_bits) {
    mpfr_init2(v_, clamp_prec(precision_bits));
    mpfr_set_zero(v_, 1);
}

Real::Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::of(double v, long precision_bits) {
    Real r(precision_bits);
    mpfr_set_d(r.v_, v, MPFR_RNDN);
    return r;
}

Real Real::of(long v, long precision_bits) {
    Real r(precision_bits);
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
}

Real Real::of(const BigInt& v, long precision_bits) {
    Real r(precision_bits);
    mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
    return r;
}

Real Real::of(const Rational& v, long precision_bits) {
    Real r(precision_bits);
    mpfr_set_q(r.v_, v.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real Real::from_string(const std::string& decimal, long precision_bits) {
    Real r(precision_bits);
    if (mpfr_set_str(r.v_, decimal.c_str(), 10, MPFR_RNDN) != 0)
        throw std::invalid_argument("unparseable decimal literal: " + decimal);
    return r;
}

Real Real::pow2(long e, long precision_bits) {
    Real r(precision_bits);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
}

long Real::precision() const { return mpfr_get_prec(v_); }

Real Real::round_to(long precision_bits) const {
    Real r(precision_bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, const Real& b) {
    Real r(std::max(a.precision(), b.precision()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, const Real& b) {
    Real r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, const Real& b) {
    Real r(std::max(a.precision(), b.precision()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, const Real& b) {
    Real r(std::max(a.precision(), b.precision()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real Real::operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::abs() const {
    Real r(precision());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::sqrt() const {
    Real r(precision());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::cbrt() const {
    Real r(precision());
    mpfr_cbrt(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::pow_int(long e) const {
    Real r(precision());
    mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
    return r;
}

int Real::sign() const { return mpfr_sgn(v_); }

long Real::exponent() const { return static_cast<long>(mpfr_get_exp(v_)); }

int Real::compare(const Real& o) const { return mpfr_cmp(v_, o.v_); }

BigInt Real::round_nearest() const {
    BigInt z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
}

double Real::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

std::string Real::str(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

Complex operator+(const Complex& a, const Complex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
}

Complex operator-(const Complex& a, const Complex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
}

Complex operator*(const Complex& a, const Complex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

Complex operator/(const Complex& a, const Complex& b) {
    Real n = b.norm();
    return {(a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n};
}

Complex Complex::operator-() const { return {-re_, -im_}; }

Complex Complex::conj() const { return {re_, -im_}; }

Real Complex::norm() const { return re_ * re_ + im_ * im_; }

Real Complex::abs() const { return norm().sqrt(); }

Complex Complex::pow_int(long e) const {
    const long prec = re_.precision();
    Complex result(Real::of(1L, prec));
    Complex base = *this;
    unsigned long k = e < 0 ? 0ul - static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    if (e < 0) result = Complex(Real::of(1L, prec)) / result;
    return result;
}

namespace {

// x^3 - x^2 - x - 1 by Horner.
Real poly(const Real& x) {
    Real one = Real::of(1L, x.precision());
    return ((x - one) * x - one) * x - one;
}

Real poly_deriv(const Real& x) {
    long p = x.precision();
    return (Real::of(3L, p) * x - Real::of(2L, p)) * x - Real::of(1L, p);
}

}  // namespace

CubicRoots tribonacci_roots(long precision_bits) {
    require_precision(precision_bits);
    const long wp = precision_bits + 64;

    // Bisection on [1, 2]: poly(1) = -2, poly(2) = +1.
    Real lo = Real::of(1L, wp);
    Real hi = Real::of(2L, wp);
    Real half = Real::of(Rational(1, 2), wp);
    for (int i = 0; i < 80; ++i) {
        Real mid = (lo + hi) * half;
        if (poly(mid).sign() < 0)
            lo = mid;
        else
            hi = mid;
    }

    // Newton from the bisection estimate; converges quadratically, so a
    // handful of steps saturates wp.
    Real x = (lo + hi) * half;
    Real limit = Real::pow2(-wp + 4, wp);
    for (int i = 0; i < 64; ++i) {
        Real step = poly(x) / poly_deriv(x);
        x = x - step;
        if (step.abs() < limit) break;
    }

    CubicRoots roots;
    roots.precision_bits = precision_bits;
    roots.alpha = x.round_to(precision_bits);

    // beta + gamma = 1 - alpha, beta * gamma = 1/alpha.
    Real one = Real::of(1L, wp);
    Real sum = one - x;
    Real prod = one / x;
    Real re = sum * half;
    Real im = (prod - re * re).sqrt();
    roots.beta = Complex(re.round_to(precision_bits), im.round_to(precision_bits));
    roots.gamma = roots.beta.conj();
    return roots;
}

namespace {

ComplexMat3 cmat(const IntMat3& m, long prec) {
    ComplexMat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out[r][c] = Complex(Real::of(m.at(r, c), prec));
    return out;
}

ComplexMat3 add(const ComplexMat3& a, const ComplexMat3& b) {
    ComplexMat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out[r][c] = a[r][c] + b[r][c];
    return out;
}

ComplexMat3 scale(const Complex& s, const ComplexMat3& m) {
    ComplexMat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out[r][c] = s * m[r][c];
    return out;
}

struct RootTriple {
    Complex r, s, t;  // the root the coefficient belongs to, then the other two
};

ComplexMat3 coefficient_matrix(const RootTriple& roots, Direction dir, const IntMat3& seed0,
                               const IntMat3& seed1, const IntMat3& seed2, long prec) {
    const Complex& r = roots.r;
    Complex r2 = r * r;
    Complex one(Real::of(1L, prec));
    Complex den = (r - roots.s) * (r - roots.t);
    ComplexMat3 num;
    if (dir == Direction::Negative) {
        // seeds are the index 0, -1, -2 matrices:
        //   (r*S_{-2} + (r-1)*r^2*S_{-1} + r^2*S_0) / ((r-s)(r-t))
        num = add(add(scale(r, cmat(seed2, prec)), scale((r - one) * r2, cmat(seed1, prec))),
                  scale(r2, cmat(seed0, prec)));
    } else {
        // seeds are the index 0, 1, 2 matrices:
        //   (r*S_2 + r*(r-1)*S_1 + S_0) / (r*(r-s)(r-t))
        num = add(add(scale(r, cmat(seed2, prec)), scale(r * (r - one), cmat(seed1, prec))),
                  cmat(seed0, prec));
        den = r * den;
    }
    ComplexMat3 out;
    for (int row = 0; row < 3; ++row)
        for (int col = 0; col < 3; ++col) out[row][col] = num[row][col] / den;
    return out;
}

}  // namespace

BinetCoeffs binet_coefficients(Family family, Direction direction, long precision_bits) {
    require_precision(precision_bits);
    CubicRoots roots = tribonacci_roots(precision_bits);
    Complex alpha(roots.alpha);

    const bool t = family == Family::T;
    IntMat3 seed0 = t ? t_matrix(0) : k_matrix(0);
    IntMat3 seed1 = t ? t_matrix(direction == Direction::Negative ? -1 : 1)
                      : k_matrix(direction == Direction::Negative ? -1 : 1);
    IntMat3 seed2 = t ? t_matrix(direction == Direction::Negative ? -2 : 2)
                      : k_matrix(direction == Direction::Negative ? -2 : 2);

    BinetCoeffs coeffs;
    coeffs.family = family;
    coeffs.direction = direction;
    coeffs.precision_bits = precision_bits;
    coeffs.A = coefficient_matrix({alpha, roots.gamma, roots.beta}, direction, seed0, seed1, seed2,
                                  precision_bits);
    coeffs.B = coefficient_matrix({roots.beta, roots.gamma, alpha}, direction, seed0, seed1, seed2,
                                  precision_bits);
    coeffs.C = coefficient_matrix({roots.gamma, roots.beta, alpha}, direction, seed0, seed1, seed2,
                                  precision_bits);
    return coeffs;
}

RealMat3 binet_matrix(Family family, long long n, long precision_bits) {
    BinetCoeffs coeffs = binet_coefficients(family, Direction::Negative, precision_bits);
    CubicRoots roots = tribonacci_roots(precision_bits);

    Complex an = Complex(roots.alpha).pow_int(static_cast<long>(n));
    Complex bn = roots.beta.pow_int(static_cast<long>(n));
    Complex cn = roots.gamma.pow_int(static_cast<long>(n));
    ComplexMat3 sum = add(add(scale(an, coeffs.A), scale(bn, coeffs.B)), scale(cn, coeffs.C));

    RealMat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out[r][c] = sum[r][c].real();
    return out;
}

Complex binet_t_sum(long long n, long precision_bits) {
    require_precision(precision_bits);
    CubicRoots roots = tribonacci_roots(precision_bits);
    Complex alpha(roots.alpha);
    const Complex& beta = roots.beta;
    const Complex& gamma = roots.gamma;

    Complex ta = alpha.pow_int(static_cast<long>(n + 1)) / ((alpha - beta) * (alpha - gamma));
    Complex tb = beta.pow_int(static_cast<long>(n + 1)) / ((beta - alpha) * (beta - gamma));
    Complex tc = gamma.pow_int(static_cast<long>(n + 1)) / ((gamma - alpha) * (gamma - beta));
    return ta + tb + tc;
}

Complex binet_k_sum(long long n, long precision_bits) {
    require_precision(precision_bits);
    CubicRoots roots = tribonacci_roots(precision_bits);
    return Complex(roots.alpha).pow_int(static_cast<long>(n)) +
           roots.beta.pow_int(static_cast<long>(n)) + roots.gamma.pow_int(static_cast<long>(n));
}

Real binet_t(long long n, long precision_bits) { return binet_t_sum(n, precision_bits).real(); }

Real binet_k(long long n, long precision_bits) { return binet_k_sum(n, precision_bits).real(); }

namespace {

RoundedValue round_with_guard(const Real& v) {
    // A magnitude near 2^precision has no fractional bits left, so a tiny
    // residual would certify nothing.
    if (v.sign() != 0 && v.exponent() > v.precision() - 20)
        throw RoundingError("value too large to resolve at this precision; raise precision_bits");
    BigInt nearest = v.round_nearest();
    Real residual = (v - Real::of(nearest, v.precision())).abs();
    if (residual > Real::of(1e-6, v.precision()))
        throw RoundingError("binet residual " + residual.str(6) + " exceeds 1e-6; raise the precision");
    return {std::move(nearest), std::move(residual)};
}

}  // namespace

RoundedValue binet_t_rounded(long long n, long precision_bits) {
    return round_with_guard(binet_t(n, precision_bits));
}

RoundedValue binet_k_rounded(long long n, long precision_bits) {
    return round_with_guard(binet_k(n, precision_bits));
}

Real consecutive_ratio(long long n, long precision_bits) {
    require_precision(precision_bits);
    if (n < 1) throw std::invalid_argument("consecutive_ratio needs n >= 1");
    BigInt tn = tribonacci(n);
    if (tn == 0) throw ZeroDenominator("T(n) = 0 at n = " + std::to_string(n));
    return Real::of(tribonacci(n + 1), precision_bits) / Real::of(tn, precision_bits);
}

}  // namespace trimat
