#pragma once

// A small DSL for polynomial identities in shifted sequence terms, e.g.
//
//   K(n) = 3*T(n+1) - 2*T(n) - T(n-1)
//
// Grammar:
//   identity := expr '=' expr
//   expr     := term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := '-' factor | base ('^' uint)?
//   base     := int | 'n' | '(-1)^n' | name '(' linexpr ')'
//             | 'frac' '(' int ',' int ')' '*' base | '(' expr ')'
//   linexpr  := [int '*'] 'n' [('+'|'-') uint] | int
//
// Whitespace is ignored, implicit multiplication is rejected, exponents
// are unsigned. Evaluation is exact (Rational); sequence terms resolve
// through a SeqEnv with "T" and "K" pre-bound.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "trimat/errors.hpp"
#include "trimat/scalar.hpp"
#include "trimat/sequence.hpp"

namespace trimat {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
public:
    enum class Kind { IntConst, IndexVar, AltSign, SeqTerm, Neg, Add, Sub, Mul, Pow, RatScale };

    static ExprPtr int_const(BigInt v);
    static ExprPtr index_var();
    static ExprPtr alt_sign();  // (-1)^n
    static ExprPtr seq_term(std::string name, long long stride, long long offset);  // S(stride*n+offset)
    static ExprPtr neg(ExprPtr e);
    static ExprPtr add(ExprPtr l, ExprPtr r);
    static ExprPtr sub(ExprPtr l, ExprPtr r);
    static ExprPtr mul(ExprPtr l, ExprPtr r);
    static ExprPtr pow(ExprPtr base, unsigned long exponent);
    static ExprPtr rat_scale(Rational s, ExprPtr e);

    Kind kind() const { return kind_; }
    const BigInt& int_value() const { return int_value_; }
    const Rational& scale() const { return scale_; }
    const std::string& seq_name() const { return name_; }
    long long stride() const { return stride_; }
    long long offset() const { return offset_; }
    unsigned long exponent() const { return exponent_; }
    const ExprPtr& lhs() const { return lhs_; }
    const ExprPtr& rhs() const { return rhs_; }

    bool equals(const Expr& other) const;  // structural

private:
    explicit Expr(Kind k) : kind_(k) {}

    Kind kind_;
    BigInt int_value_;
    Rational scale_;
    std::string name_;
    long long stride_ = 0;
    long long offset_ = 0;
    unsigned long exponent_ = 0;
    ExprPtr lhs_;
    ExprPtr rhs_;
};

struct IdentityAST {
    ExprPtr lhs;
    ExprPtr rhs;

    bool equals(const IdentityAST& other) const {
        return lhs->equals(*other.lhs) && rhs->equals(*other.rhs);
    }
};

// Name -> recurrence bindings; "T" and "K" are pre-bound. Case-sensitive.
class SeqEnv {
public:
    SeqEnv();
    void bind(SequenceSpec spec);  // throws std::invalid_argument on duplicates
    bool contains(const std::string& name) const;
    const SequenceSpec& lookup(const std::string& name) const;  // throws UnknownSequence

private:
    std::map<std::string, SequenceSpec> specs_;
};

IdentityAST parse_identity(std::string_view text);  // throws ParseError
std::string render(const Expr& e);
std::string render(const IdentityAST& ast);

Rational eval_expr(const Expr& e, long long n, const SeqEnv& env);

struct CheckFailure {
    long long n;
    Rational lhs;
    Rational rhs;
};

enum class FailureScope { None, Range, PositiveRange, NegativeRange };

struct CheckReport {
    static constexpr long long kFailureCap = 32;

    std::string name;
    std::string text;
    long long lo = 0;
    long long hi = 0;
    std::vector<CheckFailure> failures;  // first kFailureCap of them
    long long total_failures = 0;
    FailureScope scope = FailureScope::None;

    // set by conjecture_probe
    long long positive_threshold = 0;  // N
    long long negative_depth = 0;      // M

    bool holds() const { return total_failures == 0; }
};

CheckReport check_identity(const IdentityAST& ast, long long lo, long long hi, const SeqEnv& env,
                           std::string name = {});

// First establish the identity on (N, N+200]; only if that holds, sweep
// [-M, N]. A failure in the first phase means the identity was never
// established; one in the second is an actual negative-index
// counterexample.
CheckReport conjecture_probe(const IdentityAST& ast, const SeqEnv& env, long long positive_threshold,
                             long long negative_depth, std::string name = {});

struct CorpusEntry {
    std::string name;
    std::string text;
};

// Named collection of the classical T/K identities (relations, addition
// formulas, product expansions, sum steps). All parseable, all holding
// over any signed range.
const std::vector<CorpusEntry>& builtin_corpus();

// Corpus file format: one `name: identity` per line, '#' starts a comment,
// blank lines ignored.
std::vector<CorpusEntry> parse_corpus(std::string_view contents);

}  // namespace trimat
