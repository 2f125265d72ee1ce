#pragma once

// Exact 3x3 matrix algebra plus the Tribonacci matrix sequence T(n) and
// Tribonacci-Lucas matrix sequence K(n) for all signed n. T(1) is the
// companion matrix of x^3 - x^2 - x - 1; T(n) is its n-th power, and
// K(n) = K(0) * T(n). det T(n) = 1, so negative indices stay integral.

#include <array>
#include <sstream>
#include <string>

#include "trimat/errors.hpp"
#include "trimat/scalar.hpp"

namespace trimat {

template <typename T>
class Mat3 {
public:
    Mat3() : e_{} {}  // zero matrix

    static Mat3 identity() {
        Mat3 m;
        for (int i = 0; i < 3; ++i) m.e_[i][i] = 1;
        return m;
    }

    static Mat3 from_rows(const std::array<std::array<T, 3>, 3>& rows) {
        Mat3 m;
        m.e_ = rows;
        return m;
    }

    const T& at(int r, int c) const { return e_[r][c]; }
    T& at(int r, int c) { return e_[r][c]; }

    bool operator==(const Mat3&) const = default;

    Mat3 operator+(const Mat3& o) const {
        Mat3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m.e_[r][c] = e_[r][c] + o.e_[r][c];
        return m;
    }

    Mat3 operator-(const Mat3& o) const {
        Mat3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m.e_[r][c] = e_[r][c] - o.e_[r][c];
        return m;
    }

    Mat3 operator-() const {
        Mat3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m.e_[r][c] = -e_[r][c];
        return m;
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                T sum{};
                for (int k = 0; k < 3; ++k) sum += e_[r][k] * o.e_[k][c];
                m.e_[r][c] = sum;
            }
        return m;
    }

    Mat3 operator*(const T& s) const {
        Mat3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m.e_[r][c] = e_[r][c] * s;
        return m;
    }

    T det() const {
        return e_[0][0] * (e_[1][1] * e_[2][2] - e_[1][2] * e_[2][1]) -
               e_[0][1] * (e_[1][0] * e_[2][2] - e_[1][2] * e_[2][0]) +
               e_[0][2] * (e_[1][0] * e_[2][1] - e_[1][1] * e_[2][0]);
    }

    // Transposed cofactor matrix; A * adjugate(A) = det(A) * I.
    Mat3 adjugate() const {
        Mat3 m;
        m.e_[0][0] = e_[1][1] * e_[2][2] - e_[1][2] * e_[2][1];
        m.e_[0][1] = e_[0][2] * e_[2][1] - e_[0][1] * e_[2][2];
        m.e_[0][2] = e_[0][1] * e_[1][2] - e_[0][2] * e_[1][1];
        m.e_[1][0] = e_[1][2] * e_[2][0] - e_[1][0] * e_[2][2];
        m.e_[1][1] = e_[0][0] * e_[2][2] - e_[0][2] * e_[2][0];
        m.e_[1][2] = e_[0][2] * e_[1][0] - e_[0][0] * e_[1][2];
        m.e_[2][0] = e_[1][0] * e_[2][1] - e_[1][1] * e_[2][0];
        m.e_[2][1] = e_[0][1] * e_[2][0] - e_[0][0] * e_[2][1];
        m.e_[2][2] = e_[0][0] * e_[1][1] - e_[0][1] * e_[1][0];
        return m;
    }

private:
    std::array<std::array<T, 3>, 3> e_;
};

template <typename T>
Mat3<T> operator*(const T& s, const Mat3<T>& m) {
    return m * s;
}

using IntMat3 = Mat3<BigInt>;
using RatMat3 = Mat3<Rational>;

RatMat3 to_rational(const IntMat3& m);
bool is_integral(const RatMat3& m);
IntMat3 to_integer(const RatMat3& m);  // throws std::domain_error on a fractional entry

// Exact inverse via adjugate over determinant.
RatMat3 adjugate_inverse(const RatMat3& m);  // throws SingularMatrix

// Square-and-multiply. Negative exponents go through adjugate_inverse;
// exponent 0 is the identity for any input, singular or not.
RatMat3 mat_pow(const RatMat3& base, long long e);
IntMat3 mat_pow(const IntMat3& base, unsigned long long e);

// Matrix sequences by the scalar entry formulas
//
//   T(n) = [ T_{n+1}  T_n+T_{n-1}      T_n     ]
//          [ T_n      T_{n-1}+T_{n-2}  T_{n-1} ]
//          [ T_{n-1}  T_{n-2}+T_{n-3}  T_{n-2} ]
//
// and the same layout with K entries. One constructor serves both signs.
IntMat3 t_matrix(long long n);
IntMat3 k_matrix(long long n);

// Same layout from an explicit window {S_{n+1}, S_n, S_{n-1}, S_{n-2}, S_{n-3}}.
IntMat3 matrix_from_window(const std::array<BigInt, 5>& window);

enum class KKForm { A, B, C };

// K(-m) * K(-n) written as a five-term linear combination of T matrices
// around index -(m+n). The three forms are equivalent; all equal the
// direct product.
IntMat3 kk_product_expansion(long long m, long long n, KKForm form);

template <typename T>
std::string to_string(const Mat3<T>& m) {
    std::ostringstream os;
    for (int r = 0; r < 3; ++r) {
        if (r) os << '\n';
        for (int c = 0; c < 3; ++c) {
            if (c) os << ' ';
            os << m.at(r, c).get_str();
        }
    }
    return os.str();
}

}  // namespace trimat
