#pragma once

// Rational generating functions for the scalar and matrix sequences, with
// exact Maclaurin coefficient extraction. The denominator's induced
// recurrence drives the expansion, so each coefficient costs constant
// work: d_0 c_n = a_n - d_1 c_{n-1} - ... - d_k c_{n-k}.

#include <variant>
#include <vector>

#include "trimat/matrix.hpp"
#include "trimat/scalar.hpp"

namespace trimat {

// Dense integer-coefficient polynomial, ascending degree.
using Poly = std::vector<BigInt>;

struct RationalGF {
    Poly numerator;
    Poly denominator;

    void validate() const;  // denominator needs a nonzero constant term
};

// Nine numerators over one shared denominator.
struct MatrixGF {
    std::array<std::array<Poly, 3>, 3> numerators;
    Poly denominator;
};

enum class GFKind { T_POS, K_POS, T_NEG, K_NEG, TMAT_NEG, KMAT_NEG };

bool is_matrix_kind(GFKind kind);

// The generating functions as published: x/(1-x-x^2-x^3) and friends for
// positive indices, x^2/(1+x+x^2-x^3) and friends for negative ones.
std::variant<RationalGF, MatrixGF> builtin_gf(GFKind kind);

// First `count` Maclaurin coefficients, exact.
std::vector<Rational> gf_coefficients(const RationalGF& gf, long long count);

// Coefficient matrices of TMAT_NEG / KMAT_NEG; the n-th list element is
// t_matrix(-n) resp. k_matrix(-n).
std::vector<IntMat3> matrix_gf_coefficients(GFKind kind, long long count);

}  // namespace trimat
