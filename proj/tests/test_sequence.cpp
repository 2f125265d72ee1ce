#include <atomic>
#include <random>
#include <thread>
#include <vector>

#include "doctest.h"
#include "trimat/sequence.hpp"

using namespace trimat;

namespace {

// Values straight out of the reference tables, n = 0..12.
const long kTPos[] = {0, 1, 1, 2, 4, 7, 13, 24, 44, 81, 149, 274, 504};
const long kTNeg[] = {0, 0, 1, -1, 0, 2, -3, 1, 4, -8, 5, 7, -20};
const long kKPos[] = {3, 1, 3, 7, 11, 21, 39, 71, 131, 241, 443, 815, 1499};
const long kKNeg[] = {3, -1, -1, 5, -5, -1, 11, -15, 3, 23, -41, 21, 43};

SequenceSpec fibonacci_spec() {
    return SequenceSpec{"F", {1, 1}, {Rational(0), Rational(1)}};
}

}  // namespace

TEST_CASE("tribonacci reproduces both table rows") {
    for (int n = 0; n <= 12; ++n) {
        CHECK(tribonacci(n) == kTPos[n]);
        CHECK(tribonacci(-n) == kTNeg[n]);
    }
}

TEST_CASE("tribonacci_lucas reproduces both table rows") {
    for (int n = 0; n <= 12; ++n) {
        CHECK(tribonacci_lucas(n) == kKPos[n]);
        CHECK(tribonacci_lucas(-n) == kKNeg[n]);
    }
}

TEST_CASE("recurrence holds across all signed indices") {
    for (long long n = -80; n <= 80; ++n) {
        CHECK(tribonacci(n) == tribonacci(n - 1) + tribonacci(n - 2) + tribonacci(n - 3));
        CHECK(tribonacci_lucas(n) ==
              tribonacci_lucas(n - 1) + tribonacci_lucas(n - 2) + tribonacci_lucas(n - 3));
    }
}

TEST_CASE("scalar relations between K and T") {
    for (long long n = -60; n <= 60; ++n) {
        BigInt t = tribonacci(n);
        BigInt k = tribonacci_lucas(n);
        CHECK(k == 3 * tribonacci(n + 1) - 2 * t - tribonacci(n - 1));
        CHECK(k == t + 2 * tribonacci(n - 1) + 3 * tribonacci(n - 2));
        CHECK(k == 4 * tribonacci(n + 1) - t - tribonacci(n + 2));
    }
}

TEST_CASE("iteration and matrix-power strategies agree bit-exactly") {
    for (long long n = -130; n <= 130; n += 7) {
        CHECK(tribonacci_by_iteration(n) == tribonacci_by_matrix_power(n));
        CHECK(tribonacci_lucas_by_iteration(n) == tribonacci_lucas_by_matrix_power(n));
    }
    // straddle the dispatch threshold exactly
    for (long long n : {kFastPowerThreshold - 1, kFastPowerThreshold, kFastPowerThreshold + 1}) {
        CHECK(tribonacci(n) == tribonacci_by_iteration(n));
        CHECK(tribonacci(-n) == tribonacci_by_iteration(-n));
    }
    CHECK(tribonacci_by_iteration(1000) == tribonacci_by_matrix_power(1000));
    CHECK(tribonacci_by_iteration(-1000) == tribonacci_by_matrix_power(-1000));
}

TEST_CASE("eval_sequence on the builtin spec matches tribonacci") {
    const SequenceSpec& trib = builtin_spec(BuiltinSeq::Tribonacci);
    for (long long n = -100; n <= 100; ++n) {
        Rational v = eval_sequence(trib, n);
        REQUIRE(is_integer(v));
        CHECK(to_integer(v) == tribonacci(n));
    }
    CHECK(to_integer(eval_sequence(trib, -5)) == 2);
}

TEST_CASE("eval_sequence handles generic order-k specs") {
    CHECK(eval_sequence(fibonacci_spec(), -4) == Rational(-3));
    CHECK(eval_sequence(fibonacci_spec(), 10) == Rational(55));

    SequenceSpec halving{"H", {1, 2}, {Rational(0), Rational(1)}};
    CHECK(eval_sequence(halving, -1) == make_rational(1, 2));

    SequenceSpec order1{"G", {3}, {Rational(2)}};
    CHECK(eval_sequence(order1, 4) == Rational(162));
    CHECK(eval_sequence(order1, -2) == make_rational(2, 9));
}

TEST_CASE("invalid specs are rejected") {
    SequenceSpec zero_tail{"Z", {1, 0}, {Rational(0), Rational(1)}};
    CHECK_THROWS_AS(eval_sequence(zero_tail, 3), std::invalid_argument);

    SequenceSpec mismatched{"M", {1, 1}, {Rational(1)}};
    CHECK_THROWS_AS(eval_sequence(mismatched, 0), std::invalid_argument);

    SequenceSpec empty{"E", {}, {}};
    CHECK_THROWS_AS(eval_sequence(empty, 0), std::invalid_argument);
}

TEST_CASE("sequence_slice returns the inclusive index range") {
    std::vector<BigInt> t = sequence_slice(BuiltinSeq::Tribonacci, -3, 3);
    REQUIRE(t.size() == 7);
    const long expected[] = {-1, 1, 0, 0, 1, 1, 2};
    for (size_t i = 0; i < t.size(); ++i) CHECK(t[i] == expected[i]);

    std::vector<BigInt> k0 = sequence_slice(BuiltinSeq::TribonacciLucas, 0, 0);
    REQUIRE(k0.size() == 1);
    CHECK(k0[0] == 3);

    std::vector<BigInt> kn = sequence_slice(BuiltinSeq::TribonacciLucas, -4, -1);
    REQUIRE(kn.size() == 4);
    const long kexp[] = {-5, 5, -1, -1};
    for (size_t i = 0; i < kn.size(); ++i) CHECK(kn[i] == kexp[i]);

    CHECK_THROWS_AS(sequence_slice(BuiltinSeq::Tribonacci, 1, 0), std::invalid_argument);

    // slices agree with pointwise evaluation, for builtin and generic specs
    std::vector<Rational> g = sequence_slice(fibonacci_spec(), -6, 6);
    for (long long n = -6; n <= 6; ++n)
        CHECK(g[static_cast<size_t>(n + 6)] == eval_sequence(fibonacci_spec(), n));
    std::vector<BigInt> tt = sequence_slice(BuiltinSeq::Tribonacci, 5, 9);
    for (long long n = 5; n <= 9; ++n) CHECK(tt[static_cast<size_t>(n - 5)] == tribonacci(n));
}

TEST_CASE("unit trailing coefficient keeps backward values integral") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> order(1, 4);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int trial = 0; trial < 80; ++trial) {
        const int k = order(rng);
        SequenceSpec spec;
        spec.name = "U";
        for (int i = 0; i < k - 1; ++i) spec.coefficients.emplace_back(coeff(rng));
        spec.coefficients.emplace_back(sign(rng) ? 1 : -1);
        for (int i = 0; i < k; ++i) spec.initials.emplace_back(Rational(coeff(rng)));
        for (const Rational& v : sequence_slice(spec, -30, 10)) CHECK(is_integer(v));
    }
}

TEST_CASE("backward-then-forward round trip reproduces the initials") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> order(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = order(rng);
        SequenceSpec spec;
        spec.name = "R";
        for (int i = 0; i < k; ++i) spec.coefficients.emplace_back(coeff(rng));
        if (spec.coefficients.back() == 0) spec.coefficients.back() = 2;
        for (int i = 0; i < k; ++i) {
            int num = coeff(rng);
            int den = std::abs(coeff(rng)) + 1;
            spec.initials.push_back(make_rational(num, den));
        }

        // extend k steps backward, then run the forward recurrence back up
        std::vector<Rational> ext = sequence_slice(spec, -k, k - 1);
        for (int i = 0; i < k; ++i) {
            Rational forward{};
            for (int j = 1; j <= k; ++j)
                forward += spec.coefficients[static_cast<size_t>(j - 1)] * ext[static_cast<size_t>(i + k - j)];
            CHECK(forward == spec.initials[static_cast<size_t>(i)]);
        }
    }
}

TEST_CASE("concurrent evaluation from many threads") {
    // everything is a pure function of its inputs; hammer a mix of entry
    // points from several threads and compare against precomputed values
    const BigInt t900 = tribonacci(900);
    const BigInt k_m700 = tribonacci_lucas(-700);
    const Rational f_m9 = eval_sequence(fibonacci_spec(), -9);

    std::vector<std::thread> workers;
    std::atomic<int> mismatches{0};
    for (int w = 0; w < 8; ++w) {
        workers.emplace_back([&] {
            for (int i = 0; i < 25; ++i) {
                if (tribonacci(900) != t900) ++mismatches;
                if (tribonacci_lucas(-700) != k_m700) ++mismatches;
                if (eval_sequence(fibonacci_spec(), -9) != f_m9) ++mismatches;
                if (tribonacci_by_iteration(-90) != tribonacci_by_matrix_power(-90)) ++mismatches;
            }
        });
    }
    for (std::thread& t : workers) t.join();
    CHECK(mismatches == 0);
}

TEST_CASE("22*T(-n) combinations of K values are exactly divisible") {
    for (long long n = -60; n <= 60; ++n) {
        BigInt lhs = 22 * tribonacci(-n);
        BigInt rhs1 = 5 * tribonacci_lucas(-n + 2) - 3 * tribonacci_lucas(-n + 1) - 4 * tribonacci_lucas(-n);
        BigInt rhs2 = tribonacci_lucas(-n) + 5 * tribonacci_lucas(-n - 1) + 2 * tribonacci_lucas(-n + 1);
        CHECK(lhs == rhs1);
        CHECK(lhs == rhs2);
        CHECK(rhs1 % 22 == 0);
        CHECK(rhs2 % 22 == 0);
    }
}
