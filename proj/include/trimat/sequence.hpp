#pragma once

// Exact evaluation of the Tribonacci and Tribonacci-Lucas numbers, and of
// user-defined order-k constant-coefficient recurrences, at any signed
// index. Backward extension solves the recurrence for its lowest term:
//
//   w_{n-k} = (w_n - a_1 w_{n-1} - ... - a_{k-1} w_{n-k+1}) / a_k
//
// which is why a_k must be nonzero.

#include <array>
#include <string>
#include <vector>

#include "trimat/scalar.hpp"

namespace trimat {

struct SequenceSpec {
    std::string name;
    std::vector<BigInt> coefficients;  // a_1..a_k
    std::vector<Rational> initials;    // w_0..w_{k-1}

    int order() const { return static_cast<int>(coefficients.size()); }
    void validate() const;  // throws std::invalid_argument
};

enum class BuiltinSeq { Tribonacci, TribonacciLucas };

// Selector shared by the modules that work with both builtin families.
enum class Family { T, K };

const SequenceSpec& builtin_spec(BuiltinSeq seq);

// Iteration is the reference strategy; above this |n| the public entry
// points switch to companion-matrix powers. Both give identical bits.
inline constexpr long long kFastPowerThreshold = 64;

// T_n: 0, 1, 1, 2, 4, 7, ... forward; 0, 0, 1, -1, 0, 2, -3, ... backward.
BigInt tribonacci(long long n);
// K_n: 3, 1, 3, 7, 11, ... forward; 3, -1, -1, 5, -5, ... backward.
BigInt tribonacci_lucas(long long n);

BigInt tribonacci_by_iteration(long long n);
BigInt tribonacci_by_matrix_power(long long n);
BigInt tribonacci_lucas_by_iteration(long long n);
BigInt tribonacci_lucas_by_matrix_power(long long n);

// Five consecutive values {S_{n+1}, S_n, S_{n-1}, S_{n-2}, S_{n-3}},
// i.e. everything the matrix entry formulas need at index n.
std::array<BigInt, 5> tribonacci_window(long long n);
std::array<BigInt, 5> tribonacci_lucas_window(long long n);

Rational eval_sequence(const SequenceSpec& spec, long long n);

// Values at indices lo..hi inclusive, in index order.
std::vector<Rational> sequence_slice(const SequenceSpec& spec, long long lo, long long hi);
std::vector<BigInt> sequence_slice(BuiltinSeq seq, long long lo, long long hi);

}  // namespace trimat
