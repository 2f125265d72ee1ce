#include "trimat/genfunc.hpp"

#include <algorithm>
#include <stdexcept>

namespace trimat {

void RationalGF::validate() const {
    if (denominator.empty() || denominator[0] == 0)
        throw std::invalid_argument("generating-function denominator needs a nonzero constant term");
}

bool is_matrix_kind(GFKind kind) {
    return kind == GFKind::TMAT_NEG || kind == GFKind::KMAT_NEG;
}

std::variant<RationalGF, MatrixGF> builtin_gf(GFKind kind) {
    const Poly pos_den{1, -1, -1, -1};
    const Poly neg_den{1, 1, 1, -1};
    switch (kind) {
        case GFKind::T_POS:
            return RationalGF{{0, 1}, pos_den};
        case GFKind::K_POS:
            return RationalGF{{3, -2, -1}, pos_den};
        case GFKind::T_NEG:
            return RationalGF{{0, 0, 1}, neg_den};
        case GFKind::K_NEG:
            return RationalGF{{3, 2, 1}, neg_den};
        case GFKind::TMAT_NEG:
            return MatrixGF{{{{{Poly{1, 1, 1}, Poly{0, 1, 1}, Poly{0, 0, 1}}},
                              {{Poly{0, 0, 1}, Poly{1, 1}, Poly{0, 1}}},
                              {{Poly{0, 1}, Poly{0, -1, 1}, Poly{1}}}}},
                            neg_den};
        case GFKind::KMAT_NEG:
            return MatrixGF{{{{{Poly{1, 4, 3}, Poly{2, 0, 4}, Poly{3, 2, 1}}},
                              {{Poly{3, 2, 1}, Poly{-2, 2, 2}, Poly{-1, -2, 3}}},
                              {{Poly{-1, -2, 3}, Poly{4, 4, -2}, Poly{-1, 4, -1}}}}},
                            neg_den};
    }
    throw std::invalid_argument("unknown generating-function kind");
}

std::vector<Rational> gf_coefficients(const RationalGF& gf, long long count) {
    gf.validate();
    if (count < 1) throw std::invalid_argument("coefficient count must be positive");

    const Poly& num = gf.numerator;
    const Poly& den = gf.denominator;
    const Rational d0(den[0]);

    std::vector<Rational> coeffs(static_cast<size_t>(count));
    for (long long n = 0; n < count; ++n) {
        Rational acc = n < static_cast<long long>(num.size()) ? Rational(num[static_cast<size_t>(n)])
                                                              : Rational(0);
        const long long reach = std::min<long long>(n, static_cast<long long>(den.size()) - 1);
        for (long long i = 1; i <= reach; ++i)
            acc -= den[static_cast<size_t>(i)] * coeffs[static_cast<size_t>(n - i)];
        coeffs[static_cast<size_t>(n)] = acc / d0;
    }
    return coeffs;
}

std::vector<IntMat3> matrix_gf_coefficients(GFKind kind, long long count) {
    if (!is_matrix_kind(kind)) throw std::invalid_argument("scalar kind passed to matrix expansion");
    if (count < 1) throw std::invalid_argument("coefficient count must be positive");

    const MatrixGF gf = std::get<MatrixGF>(builtin_gf(kind));
    std::array<std::array<std::vector<Rational>, 3>, 3> entry_coeffs;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            entry_coeffs[r][c] = gf_coefficients(RationalGF{gf.numerators[r][c], gf.denominator}, count);

    std::vector<IntMat3> mats(static_cast<size_t>(count));
    for (long long n = 0; n < count; ++n)
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                mats[static_cast<size_t>(n)].at(r, c) = to_integer(entry_coeffs[r][c][static_cast<size_t>(n)]);
    return mats;
}

}  // namespace trimat
