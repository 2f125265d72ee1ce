#include "trimat/sequence.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "trimat/matrix.hpp"

namespace trimat {
namespace {

IntMat3 companion() {
    return IntMat3::from_rows({{{1, 1, 1}, {1, 0, 0}, {0, 1, 0}}});
}

IntMat3 lucas_seed() {
    return IntMat3::from_rows({{{1, 2, 3}, {3, -2, -1}, {-1, 4, -1}}});
}

// companion^n for signed n. det(companion) = 1, so the adjugate of the
// positive power is the exact inverse.
IntMat3 companion_power(long long n) {
    unsigned long long e = n < 0 ? 0ull - static_cast<unsigned long long>(n)
                                 : static_cast<unsigned long long>(n);
    IntMat3 p = mat_pow(companion(), e);
    if (n < 0) p = p.adjugate();
    return p;
}

// {S_{n+1}, S_n, S_{n-1}, S_{n-2}, S_{n-3}} by stepping the third-order
// recurrence from the given seed (values at indices 1, 0, -1).
std::array<BigInt, 5> window_by_iteration(long long n, BigInt s1, BigInt s0, BigInt sm1) {
    BigInt a = std::move(s1), b = std::move(s0), c = std::move(sm1);  // S_{i+1}, S_i, S_{i-1}
    long long i = 0;
    while (i < n) {
        BigInt next = a + b + c;
        c = std::move(b);
        b = std::move(a);
        a = std::move(next);
        ++i;
    }
    while (i > n) {
        BigInt prev = a - b - c;  // S_{i-2}
        a = std::move(b);
        b = std::move(c);
        c = std::move(prev);
        --i;
    }
    // a=S_{n+1}, b=S_n, c=S_{n-1}; extend two more steps down.
    BigInt s_nm2 = a - b - c;
    BigInt s_nm3 = b - c - s_nm2;
    return {std::move(a), std::move(b), std::move(c), std::move(s_nm2), std::move(s_nm3)};
}

// Same five values out of the signed matrix power: for M = K0 * T(n) or
// M = T(n), the entries are {M(0,0), M(1,0), M(2,0), M(2,2), M(2,1)-M(2,2)}.
std::array<BigInt, 5> window_from_matrix(const IntMat3& m) {
    return {m.at(0, 0), m.at(1, 0), m.at(2, 0), m.at(2, 2), m.at(2, 1) - m.at(2, 2)};
}

}  // namespace

void SequenceSpec::validate() const {
    if (coefficients.empty()) throw std::invalid_argument("sequence order must be at least 1");
    if (coefficients.size() != initials.size())
        throw std::invalid_argument("coefficient and initial-value counts differ");
    if (coefficients.back() == 0)
        throw std::invalid_argument("trailing coefficient a_k must be nonzero (backward extension undefined)");
}

const SequenceSpec& builtin_spec(BuiltinSeq seq) {
    static const SequenceSpec trib{"T", {1, 1, 1}, {Rational(0), Rational(1), Rational(1)}};
    static const SequenceSpec lucas{"K", {1, 1, 1}, {Rational(3), Rational(1), Rational(3)}};
    return seq == BuiltinSeq::Tribonacci ? trib : lucas;
}

BigInt tribonacci_by_iteration(long long n) {
    return window_by_iteration(n, 1, 0, 0)[1];
}

BigInt tribonacci_lucas_by_iteration(long long n) {
    return window_by_iteration(n, 1, 3, -1)[1];
}

BigInt tribonacci_by_matrix_power(long long n) {
    return companion_power(n).at(1, 0);
}

BigInt tribonacci_lucas_by_matrix_power(long long n) {
    IntMat3 p = companion_power(n);
    // K_n = 3 T_{n+1} - 2 T_n - T_{n-1}
    return 3 * p.at(0, 0) - 2 * p.at(1, 0) - p.at(2, 0);
}

BigInt tribonacci(long long n) {
    return std::llabs(n) > kFastPowerThreshold ? tribonacci_by_matrix_power(n)
                                               : tribonacci_by_iteration(n);
}

BigInt tribonacci_lucas(long long n) {
    return std::llabs(n) > kFastPowerThreshold ? tribonacci_lucas_by_matrix_power(n)
                                               : tribonacci_lucas_by_iteration(n);
}

std::array<BigInt, 5> tribonacci_window(long long n) {
    if (std::llabs(n) > kFastPowerThreshold) return window_from_matrix(companion_power(n));
    return window_by_iteration(n, 1, 0, 0);
}

std::array<BigInt, 5> tribonacci_lucas_window(long long n) {
    if (std::llabs(n) > kFastPowerThreshold)
        return window_from_matrix(lucas_seed() * companion_power(n));
    return window_by_iteration(n, 1, 3, -1);
}

Rational eval_sequence(const SequenceSpec& spec, long long n) {
    spec.validate();
    const int k = spec.order();
    if (n >= 0 && n < k) return spec.initials[static_cast<size_t>(n)];

    // Window w holds values at indices base..base+k-1.
    std::vector<Rational> w = spec.initials;
    if (n >= k) {
        for (long long i = k; i <= n; ++i) {
            Rational next{};
            for (int j = 1; j <= k; ++j) next += spec.coefficients[static_cast<size_t>(j - 1)] * w[static_cast<size_t>(k - j)];
            w.erase(w.begin());
            w.push_back(std::move(next));
        }
        return w.back();
    }
    Rational ak(spec.coefficients.back());
    for (long long base = 0; base > n; --base) {
        Rational top = w.back();  // w_m with m = base+k-1
        for (int j = 1; j <= k - 1; ++j) top -= spec.coefficients[static_cast<size_t>(j - 1)] * w[static_cast<size_t>(k - 1 - j)];
        w.pop_back();
        w.insert(w.begin(), top / ak);
    }
    return w.front();
}

std::vector<Rational> sequence_slice(const SequenceSpec& spec, long long lo, long long hi) {
    spec.validate();
    if (lo > hi) throw std::invalid_argument("slice bounds reversed: lo > hi");
    const int k = spec.order();

    // Fill indices min(lo,0)..max(hi,k-1) in one pass, then cut.
    const long long a = std::min<long long>(lo, 0);
    const long long b = std::max<long long>(hi, k - 1);
    std::vector<Rational> vals(static_cast<size_t>(b - a + 1));
    for (int i = 0; i < k; ++i) vals[static_cast<size_t>(i - a)] = spec.initials[static_cast<size_t>(i)];
    for (long long i = k; i <= b; ++i) {
        Rational next{};
        for (int j = 1; j <= k; ++j) next += spec.coefficients[static_cast<size_t>(j - 1)] * vals[static_cast<size_t>(i - j - a)];
        vals[static_cast<size_t>(i - a)] = std::move(next);
    }
    Rational ak(spec.coefficients.back());
    for (long long i = -1; i >= a; --i) {
        Rational top = vals[static_cast<size_t>(i + k - a)];
        for (int j = 1; j <= k - 1; ++j) top -= spec.coefficients[static_cast<size_t>(j - 1)] * vals[static_cast<size_t>(i + k - j - a)];
        vals[static_cast<size_t>(i - a)] = top / ak;
    }

    std::vector<Rational> out;
    out.reserve(static_cast<size_t>(hi - lo + 1));
    for (long long i = lo; i <= hi; ++i) out.push_back(vals[static_cast<size_t>(i - a)]);
    return out;
}

std::vector<BigInt> sequence_slice(BuiltinSeq seq, long long lo, long long hi) {
    if (lo > hi) throw std::invalid_argument("slice bounds reversed: lo > hi");
    const bool trib = seq == BuiltinSeq::Tribonacci;
    const long long a = std::min<long long>(lo, 0);
    const long long b = std::max<long long>(hi, 2);
    std::vector<BigInt> vals(static_cast<size_t>(b - a + 1));
    vals[static_cast<size_t>(0 - a)] = trib ? 0 : 3;
    vals[static_cast<size_t>(1 - a)] = 1;
    vals[static_cast<size_t>(2 - a)] = trib ? 1 : 3;
    for (long long i = 3; i <= b; ++i)
        vals[static_cast<size_t>(i - a)] = vals[static_cast<size_t>(i - 1 - a)] +
                                           vals[static_cast<size_t>(i - 2 - a)] +
                                           vals[static_cast<size_t>(i - 3 - a)];
    for (long long i = -1; i >= a; --i)
        vals[static_cast<size_t>(i - a)] = vals[static_cast<size_t>(i + 3 - a)] -
                                           vals[static_cast<size_t>(i + 2 - a)] -
                                           vals[static_cast<size_t>(i + 1 - a)];
    std::vector<BigInt> out;
    out.reserve(static_cast<size_t>(hi - lo + 1));
    for (long long i = lo; i <= hi; ++i) out.push_back(vals[static_cast<size_t>(i - a)]);
    return out;
}

}  // namespace trimat
