#include "trimat/identity.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace trimat {

ExprPtr Expr::int_const(BigInt v) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::IntConst));
    e->int_value_ = std::move(v);
    return e;
}

ExprPtr Expr::index_var() { return std::shared_ptr<Expr>(new Expr(Kind::IndexVar)); }

ExprPtr Expr::alt_sign() { return std::shared_ptr<Expr>(new Expr(Kind::AltSign)); }

ExprPtr Expr::seq_term(std::string name, long long stride, long long offset) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::SeqTerm));
    e->name_ = std::move(name);
    e->stride_ = stride;
    e->offset_ = offset;
    return e;
}

ExprPtr Expr::neg(ExprPtr operand) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Neg));
    e->lhs_ = std::move(operand);
    return e;
}

ExprPtr Expr::add(ExprPtr l, ExprPtr r) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Add));
    e->lhs_ = std::move(l);
    e->rhs_ = std::move(r);
    return e;
}

ExprPtr Expr::sub(ExprPtr l, ExprPtr r) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Sub));
    e->lhs_ = std::move(l);
    e->rhs_ = std::move(r);
    return e;
}

ExprPtr Expr::mul(ExprPtr l, ExprPtr r) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Mul));
    e->lhs_ = std::move(l);
    e->rhs_ = std::move(r);
    return e;
}

ExprPtr Expr::pow(ExprPtr base, unsigned long exponent) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Pow));
    e->lhs_ = std::move(base);
    e->exponent_ = exponent;
    return e;
}

ExprPtr Expr::rat_scale(Rational s, ExprPtr operand) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::RatScale));
    e->scale_ = std::move(s);
    e->lhs_ = std::move(operand);
    return e;
}

bool Expr::equals(const Expr& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case Kind::IntConst:
            return int_value_ == other.int_value_;
        case Kind::IndexVar:
        case Kind::AltSign:
            return true;
        case Kind::SeqTerm:
            return name_ == other.name_ && stride_ == other.stride_ && offset_ == other.offset_;
        case Kind::Neg:
            return lhs_->equals(*other.lhs_);
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
            return lhs_->equals(*other.lhs_) && rhs_->equals(*other.rhs_);
        case Kind::Pow:
            return exponent_ == other.exponent_ && lhs_->equals(*other.lhs_);
        case Kind::RatScale:
            return scale_ == other.scale_ && lhs_->equals(*other.lhs_);
    }
    return false;
}

SeqEnv::SeqEnv() {
    specs_.emplace("T", builtin_spec(BuiltinSeq::Tribonacci));
    specs_.emplace("K", builtin_spec(BuiltinSeq::TribonacciLucas));
}

void SeqEnv::bind(SequenceSpec spec) {
    spec.validate();
    if (spec.name.empty()) throw std::invalid_argument("sequence needs a name");
    if (specs_.count(spec.name)) throw std::invalid_argument("sequence already bound: " + spec.name);
    specs_.emplace(spec.name, std::move(spec));
}

bool SeqEnv::contains(const std::string& name) const { return specs_.count(name) != 0; }

const SequenceSpec& SeqEnv::lookup(const std::string& name) const {
    auto it = specs_.find(name);
    if (it == specs_.end()) throw UnknownSequence(name);
    return it->second;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    IdentityAST parse_identity() {
        ExprPtr lhs = parse_expr();
        expect('=');
        ExprPtr rhs = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("end of input");
        return {std::move(lhs), std::move(rhs)};
    }

private:
    std::string_view text_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& expected) {
        std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'"
                                                : "end of input";
        throw ParseError(expected, pos_, found);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!consume(c)) fail(std::string("'") + c + "'");
    }

    bool at_digit() {
        char c = peek();
        return c >= '0' && c <= '9';
    }

    std::string lex_digits() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("digits");
        return std::string(text_.substr(start, pos_ - start));
    }

    unsigned long lex_uint() {
        std::string digits = lex_digits();
        try {
            return std::stoul(digits);
        } catch (const std::out_of_range&) {
            fail("a smaller integer");
        }
    }

    BigInt lex_int() {
        skip_ws();
        bool negative = consume('-');
        BigInt v(lex_digits(), 10);
        return negative ? -v : v;
    }

    std::string lex_name() {
        skip_ws();
        size_t start = pos_;
        if (pos_ < text_.size() &&
            (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '_'))
                ++pos_;
        }
        if (start == pos_) fail("a name");
        return std::string(text_.substr(start, pos_ - start));
    }

    ExprPtr parse_expr() {
        ExprPtr acc = parse_term();
        for (;;) {
            if (consume('+'))
                acc = Expr::add(std::move(acc), parse_term());
            else if (consume('-'))
                acc = Expr::sub(std::move(acc), parse_term());
            else
                return acc;
        }
    }

    ExprPtr parse_term() {
        ExprPtr acc = parse_factor();
        while (consume('*')) acc = Expr::mul(std::move(acc), parse_factor());
        return acc;
    }

    ExprPtr parse_factor() {
        if (consume('-')) return Expr::neg(parse_factor());
        ExprPtr base = parse_base();
        if (consume('^')) {
            if (at_digit()) return Expr::pow(std::move(base), lex_uint());
            // the one legal non-integer exponent: (-1)^n
            bool minus_one = base->kind() == Expr::Kind::Neg &&
                             base->lhs()->kind() == Expr::Kind::IntConst &&
                             base->lhs()->int_value() == 1;
            if (minus_one && peek() == 'n') {
                ++pos_;
                return Expr::alt_sign();
            }
            fail("an unsigned integer exponent");
        }
        return base;
    }

    ExprPtr parse_base() {
        char c = peek();
        if (c >= '0' && c <= '9') return Expr::int_const(BigInt(lex_digits(), 10));
        if (c == '(') {
            ++pos_;
            ExprPtr inner = parse_expr();
            expect(')');
            return inner;
        }
        std::string name = lex_name();
        if (name == "n") return Expr::index_var();
        if (name == "frac") {
            expect('(');
            BigInt p = lex_int();
            expect(',');
            BigInt q = lex_int();
            if (q == 0) fail("a nonzero denominator");
            expect(')');
            expect('*');
            return Expr::rat_scale(make_rational(p, q), parse_base());
        }
        expect('(');
        auto [stride, offset] = parse_linexpr();
        expect(')');
        return Expr::seq_term(std::move(name), stride, offset);
    }

    // [int '*'] 'n' [('+'|'-') uint]  |  int
    std::pair<long long, long long> parse_linexpr() {
        long long stride;
        if (peek() == 'n') {
            ++pos_;
            stride = 1;
        } else {
            skip_ws();
            bool negative = consume('-');
            if (!at_digit()) fail("an integer or n");
            long long value;
            try {
                value = std::stoll(lex_digits());
            } catch (const std::out_of_range&) {
                fail("a smaller integer");
            }
            if (negative) value = -value;
            if (consume('*')) {
                skip_ws();
                if (peek() != 'n') fail("'n'");
                ++pos_;
                stride = value;
            } else {
                return {0, value};  // constant index
            }
        }
        long long offset = 0;
        if (consume('+'))
            offset = static_cast<long long>(lex_uint());
        else if (consume('-'))
            offset = -static_cast<long long>(lex_uint());
        return {stride, offset};
    }
};

}  // namespace

IdentityAST parse_identity(std::string_view text) { return Parser(text).parse_identity(); }

// ---------------------------------------------------------------------------
// Rendering

namespace {

// higher binds tighter
int precedence(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::RatScale:
            return 2;
        case Expr::Kind::Neg:
            return 3;
        case Expr::Kind::AltSign:
            // already carries its own caret, so it must regain parentheses
            // under '^' or a frac() scale
            return 3;
        case Expr::Kind::Pow:
            return 4;
        default:
            return 5;
    }
}

std::string linexpr_str(long long stride, long long offset) {
    if (stride == 0) return std::to_string(offset);
    std::string s = stride == 1 ? "n" : std::to_string(stride) + "*n";
    if (offset > 0) s += "+" + std::to_string(offset);
    if (offset < 0) s += "-" + std::to_string(-offset);
    return s;
}

void render_into(const Expr& e, std::ostringstream& os, int parent_prec) {
    const int prec = precedence(e);
    const bool wrap = prec < parent_prec;
    if (wrap) os << '(';
    switch (e.kind()) {
        case Expr::Kind::IntConst: {
            // parser-built constants are non-negative; wrap programmatic
            // negative ones so the text stays reparseable
            if (e.int_value() < 0 && parent_prec >= 3) {
                os << '(' << e.int_value().get_str() << ')';
            } else {
                os << e.int_value().get_str();
            }
            break;
        }
        case Expr::Kind::IndexVar:
            os << 'n';
            break;
        case Expr::Kind::AltSign:
            os << "(-1)^n";
            break;
        case Expr::Kind::SeqTerm:
            os << e.seq_name() << '(' << linexpr_str(e.stride(), e.offset()) << ')';
            break;
        case Expr::Kind::Neg:
            os << '-';
            render_into(*e.lhs(), os, precedence(e) + 1);
            break;
        case Expr::Kind::Add:
            render_into(*e.lhs(), os, prec);
            os << " + ";
            render_into(*e.rhs(), os, prec + 1);
            break;
        case Expr::Kind::Sub:
            render_into(*e.lhs(), os, prec);
            os << " - ";
            render_into(*e.rhs(), os, prec + 1);
            break;
        case Expr::Kind::Mul:
            render_into(*e.lhs(), os, prec);
            os << '*';
            render_into(*e.rhs(), os, prec + 1);
            break;
        case Expr::Kind::Pow:
            render_into(*e.lhs(), os, prec + 1);
            os << '^' << e.exponent();
            break;
        case Expr::Kind::RatScale:
            os << "frac(" << e.scale().get_num().get_str() << ',' << e.scale().get_den().get_str()
               << ")*";
            // the scaled operand must reparse as a base
            render_into(*e.lhs(), os, 5);
            break;
    }
    if (wrap) os << ')';
}

}  // namespace

std::string render(const Expr& e) {
    std::ostringstream os;
    render_into(e, os, 0);
    return os.str();
}

std::string render(const IdentityAST& ast) { return render(*ast.lhs) + " = " + render(*ast.rhs); }

// ---------------------------------------------------------------------------
// Evaluation

namespace {

long long term_index(long long stride, long long offset, long long n) {
    long long scaled, idx;
    if (__builtin_mul_overflow(stride, n, &scaled) || __builtin_add_overflow(scaled, offset, &idx))
        throw std::overflow_error("sequence index overflows at n = " + std::to_string(n));
    return idx;
}

// Per-sequence contiguous value windows so range sweeps cost one linear
// pass instead of one per (term, n).
class SeqCache {
public:
    explicit SeqCache(const SeqEnv& env) : env_(env) {}

    const Rational& value(const std::string& name, long long idx) {
        Window& w = windows_[name];
        if (w.vals.empty() || idx < w.lo || idx >= w.lo + static_cast<long long>(w.vals.size())) {
            long long lo = std::min(idx - 16, w.vals.empty() ? idx : w.lo);
            long long hi = std::max(idx + 16, w.vals.empty() ? idx
                                                             : w.lo + static_cast<long long>(w.vals.size()) - 1);
            // grow geometrically so alternating out-of-range hits stay cheap
            long long slack = static_cast<long long>(w.vals.size());
            w.vals = sequence_slice(env_.lookup(name), lo - slack, hi + slack);
            w.lo = lo - slack;
        }
        return w.vals[static_cast<size_t>(idx - w.lo)];
    }

    // Prefill the window each SeqTerm will touch when n sweeps lo..hi.
    void reserve(const Expr& e, long long lo, long long hi) {
        switch (e.kind()) {
            case Expr::Kind::SeqTerm: {
                long long a = term_index(e.stride(), e.offset(), lo);
                long long b = term_index(e.stride(), e.offset(), hi);
                if (a > b) std::swap(a, b);
                Window& w = windows_[e.seq_name()];
                if (!w.vals.empty()) {
                    a = std::min(a, w.lo);
                    b = std::max(b, w.lo + static_cast<long long>(w.vals.size()) - 1);
                }
                w.vals = sequence_slice(env_.lookup(e.seq_name()), a, b);
                w.lo = a;
                break;
            }
            case Expr::Kind::Neg:
            case Expr::Kind::Pow:
            case Expr::Kind::RatScale:
                reserve(*e.lhs(), lo, hi);
                break;
            case Expr::Kind::Add:
            case Expr::Kind::Sub:
            case Expr::Kind::Mul:
                reserve(*e.lhs(), lo, hi);
                reserve(*e.rhs(), lo, hi);
                break;
            default:
                break;
        }
    }

private:
    struct Window {
        long long lo = 0;
        std::vector<Rational> vals;
    };

    const SeqEnv& env_;
    std::unordered_map<std::string, Window> windows_;
};

Rational pow_rational(const Rational& q, unsigned long e) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), e);
    return out;  // q was canonical, so num^e / den^e is too
}

Rational eval_node(const Expr& e, long long n, const SeqEnv& env, SeqCache* cache) {
    switch (e.kind()) {
        case Expr::Kind::IntConst:
            return Rational(e.int_value());
        case Expr::Kind::IndexVar:
            return Rational(static_cast<long>(n));
        case Expr::Kind::AltSign:
            return Rational(n % 2 == 0 ? 1 : -1);
        case Expr::Kind::SeqTerm: {
            long long idx = term_index(e.stride(), e.offset(), n);
            if (cache) return cache->value(e.seq_name(), idx);
            return eval_sequence(env.lookup(e.seq_name()), idx);
        }
        case Expr::Kind::Neg:
            return -eval_node(*e.lhs(), n, env, cache);
        case Expr::Kind::Add:
            return eval_node(*e.lhs(), n, env, cache) + eval_node(*e.rhs(), n, env, cache);
        case Expr::Kind::Sub:
            return eval_node(*e.lhs(), n, env, cache) - eval_node(*e.rhs(), n, env, cache);
        case Expr::Kind::Mul:
            return eval_node(*e.lhs(), n, env, cache) * eval_node(*e.rhs(), n, env, cache);
        case Expr::Kind::Pow:
            return pow_rational(eval_node(*e.lhs(), n, env, cache), e.exponent());
        case Expr::Kind::RatScale:
            return e.scale() * eval_node(*e.lhs(), n, env, cache);
    }
    throw std::logic_error("unreachable expression kind");
}

}  // namespace

Rational eval_expr(const Expr& e, long long n, const SeqEnv& env) {
    return eval_node(e, n, env, nullptr);
}

CheckReport check_identity(const IdentityAST& ast, long long lo, long long hi, const SeqEnv& env,
                           std::string name) {
    if (lo > hi) throw std::invalid_argument("check range reversed: lo > hi");
    CheckReport report;
    report.name = std::move(name);
    report.text = render(ast);
    report.lo = lo;
    report.hi = hi;

    SeqCache cache(env);
    cache.reserve(*ast.lhs, lo, hi);
    cache.reserve(*ast.rhs, lo, hi);

    for (long long n = lo; n <= hi; ++n) {
        Rational l = eval_node(*ast.lhs, n, env, &cache);
        Rational r = eval_node(*ast.rhs, n, env, &cache);
        if (l != r) {
            ++report.total_failures;
            if (static_cast<long long>(report.failures.size()) < CheckReport::kFailureCap)
                report.failures.push_back({n, std::move(l), std::move(r)});
        }
    }
    if (report.total_failures > 0) report.scope = FailureScope::Range;
    return report;
}

CheckReport conjecture_probe(const IdentityAST& ast, const SeqEnv& env, long long positive_threshold,
                             long long negative_depth, std::string name) {
    if (positive_threshold < 1) throw std::invalid_argument("positive threshold must be positive");
    if (negative_depth < 1) throw std::invalid_argument("negative depth must be positive");

    CheckReport report =
        check_identity(ast, positive_threshold + 1, positive_threshold + 200, env, name);
    report.positive_threshold = positive_threshold;
    report.negative_depth = negative_depth;
    if (!report.holds()) {
        report.scope = FailureScope::PositiveRange;
        return report;
    }

    CheckReport negative = check_identity(ast, -negative_depth, positive_threshold, env, std::move(name));
    negative.positive_threshold = positive_threshold;
    negative.negative_depth = negative_depth;
    if (!negative.holds()) negative.scope = FailureScope::NegativeRange;
    return negative;
}

// ---------------------------------------------------------------------------
// Corpus

const std::vector<CorpusEntry>& builtin_corpus() {
    static const std::vector<CorpusEntry> corpus = {
        {"eq3", "K(n) = 3*T(n+1) - 2*T(n) - T(n-1)"},
        {"eq4", "K(n) = T(n) + 2*T(n-1) + 3*T(n-2)"},
        {"eq5", "K(n) = 4*T(n+1) - T(n) - T(n+2)"},
        {"recurrence_t", "T(n) = T(n-1) + T(n-2) + T(n-3)"},
        {"recurrence_k", "K(n) = K(n-1) + K(n-2) + K(n-3)"},
        {"back_extension_t", "T(-1*n) = T(-1*n+3) - T(-1*n+2) - T(-1*n+1)"},
        {"back_extension_k", "K(-1*n) = K(-1*n+3) - K(-1*n+2) - K(-1*n+1)"},
        {"relation_a_neg", "K(-1*n) = 3*T(-1*n+1) - 2*T(-1*n) - T(-1*n-1)"},
        {"relation_b_neg", "K(-1*n) = T(-1*n) + 2*T(-1*n-1) + 3*T(-1*n-2)"},
        {"relation_c_neg", "K(-1*n) = 4*T(-1*n+1) - T(-1*n+2) - T(-1*n)"},
        {"relation_d_scaled", "T(-1*n) = frac(1,22)*(5*K(-1*n+2) - 3*K(-1*n+1) - 4*K(-1*n))"},
        {"relation_d_cleared", "22*T(-1*n) = 5*K(-1*n+2) - 3*K(-1*n+1) - 4*K(-1*n)"},
        {"k0_route_scaled", "T(-1*n) = frac(1,22)*(K(-1*n) + 5*K(-1*n-1) + 2*K(-1*n+1))"},
        {"k0_route_cleared", "22*T(-1*n) = K(-1*n) + 5*K(-1*n-1) + 2*K(-1*n+1)"},
        {"addition_m0", "T(-1*n) = T(0)*T(-1*n+1) + T(-1*n)*(T(-1) + T(-2)) + T(-1)*T(-1*n-1)"},
        {"addition_m1", "T(-1*n-1) = T(-1)*T(-1*n+1) + T(-1*n)*(T(-2) + T(-3)) + T(-2)*T(-1*n-1)"},
        {"addition_m2", "T(-1*n-2) = T(-2)*T(-1*n+1) + T(-1*n)*(T(-3) + T(-4)) + T(-3)*T(-1*n-1)"},
        {"addition_m3", "T(-1*n-3) = T(-3)*T(-1*n+1) + T(-1*n)*(T(-4) + T(-5)) + T(-4)*T(-1*n-1)"},
        {"mixed_addition_m1",
         "K(-1*n-1) = T(-1)*K(-1*n+1) + K(-1*n)*(T(-2) + T(-3)) + K(-1*n-1)*T(-2)"},
        {"mixed_addition_m2",
         "K(-1*n-2) = T(-2)*K(-1*n+1) + K(-1*n)*(T(-3) + T(-4)) + K(-1*n-1)*T(-3)"},
        {"kk_entry_form_a_m2",
         "K(-2)*K(-1*n+1) + K(-1*n)*(K(-3) + K(-4)) + K(-3)*K(-1*n-1) = "
         "9*T(-1*n) - 12*T(-1*n-1) - 2*T(-1*n-2) + 4*T(-1*n-3) + T(-1*n-4)"},
        {"kk_entry_form_b_m1",
         "K(-1)*K(-1*n+1) + K(-1*n)*(K(-2) + K(-3)) + K(-2)*K(-1*n-1) = "
         "T(-1*n-1) + 4*T(-1*n-2) + 10*T(-1*n-3) + 12*T(-1*n-4) + 9*T(-1*n-5)"},
        {"kk_entry_form_c_m0",
         "K(0)*K(-1*n+1) + K(-1*n)*(K(-1) + K(-2)) + K(-1)*K(-1*n-1) = "
         "T(-1*n) - 8*T(-1*n+1) + 18*T(-1*n+2) - 8*T(-1*n+3) + T(-1*n+4)"},
        {"partial_sum_step_t",
         "frac(-1,2)*(T(-1*n) + 2*T(-1*n-1) + T(-1*n-2) - 1) = "
         "frac(-1,2)*(T(-1*n+1) + 2*T(-1*n) + T(-1*n-1) - 1) + T(-1*n)"},
        {"partial_sum_step_k",
         "frac(-1,2)*(K(-1*n) + 2*K(-1*n-1) + K(-1*n-2) - 6) = "
         "frac(-1,2)*(K(-1*n+1) + 2*K(-1*n) + K(-1*n-1) - 6) + K(-1*n)"},
    };
    return corpus;
}

std::vector<CorpusEntry> parse_corpus(std::string_view contents) {
    std::vector<CorpusEntry> entries;
    size_t line_no = 0;
    size_t start = 0;
    while (start <= contents.size()) {
        size_t end = contents.find('\n', start);
        std::string_view line = contents.substr(
            start, end == std::string_view::npos ? std::string_view::npos : end - start);
        ++line_no;

        if (size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        size_t first = line.find_first_not_of(" \t\r");
        if (first != std::string_view::npos) {
            line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
            size_t colon = line.find(':');
            if (colon == std::string_view::npos)
                throw std::runtime_error("corpus line " + std::to_string(line_no) +
                                         ": expected `name: identity`");
            std::string name(line.substr(0, colon));
            while (!name.empty() && (name.back() == ' ' || name.back() == '\t')) name.pop_back();
            std::string text(line.substr(colon + 1));
            if (name.empty())
                throw std::runtime_error("corpus line " + std::to_string(line_no) + ": empty name");
            entries.push_back({std::move(name), std::move(text)});
        }

        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return entries;
}

}  // namespace trimat
