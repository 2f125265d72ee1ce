// trimat: exact Tribonacci / Tribonacci-Lucas sequence and matrix toolkit.
//
// Exit codes: 0 success (and every checked identity holds), 1 at least one
// identity failed, 2 usage or parse errors.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "trimat/analytic.hpp"
#include "trimat/genfunc.hpp"
#include "trimat/identity.hpp"
#include "trimat/matrix.hpp"
#include "trimat/sequence.hpp"
#include "trimat/sums.hpp"

using json = nlohmann::ordered_json;
using namespace trimat;

namespace {

constexpr int kExitIdentityFailure = 1;
constexpr int kExitUsage = 2;

struct Output {
    bool structured = false;

    void emit(const json& record) const { std::cout << record.dump() << "\n"; }
};

long default_bits() {
    if (const char* env = std::getenv("TRIMAT_BITS")) {
        char* end = nullptr;
        long bits = std::strtol(env, &end, 10);
        if (end && *end == '\0' && bits >= 64) return bits;
        std::cerr << "warning: ignoring invalid TRIMAT_BITS value '" << env << "'\n";
    }
    return 192;
}

int display_digits(long bits) {
    // ~3.32 bits per decimal digit, clamped for readability
    return std::min<long>(50, std::max<long>(20, bits * 3 / 10));
}

struct IndexRange {
    long long lo = 0;
    long long hi = 0;
    bool is_range = false;
};

long long parse_whole_int(const std::string& text) {
    size_t consumed = 0;
    long long value = std::stoll(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument("trailing characters");
    return value;
}

IndexRange parse_index_arg(const std::string& arg) {
    IndexRange out;
    size_t dots = arg.find("..");
    try {
        if (dots == std::string::npos) {
            out.lo = out.hi = parse_whole_int(arg);
        } else {
            out.lo = parse_whole_int(arg.substr(0, dots));
            out.hi = parse_whole_int(arg.substr(dots + 2));
            out.is_range = true;
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("index", "expected an integer or lo..hi, got '" + arg + "'");
    }
    if (out.lo > out.hi)
        throw CLI::ValidationError("index", "range is reversed: " + std::to_string(out.lo) + " > " +
                                                std::to_string(out.hi));
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Rational rational_from_json(const json& v) {
    if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        size_t slash = s.find('/');
        if (slash == std::string::npos) return Rational(BigInt(s, 10));
        return make_rational(BigInt(s.substr(0, slash), 10), BigInt(s.substr(slash + 1), 10));
    }
    throw std::runtime_error("expected an integer or \"p/q\" string in spec file");
}

// Spec files are JSON: {"name": "...", "coefficients": [...], "initials": [...]}
SequenceSpec load_spec_file(const std::string& path) {
    json doc = json::parse(read_file(path));
    SequenceSpec spec;
    spec.name = doc.value("name", std::string("user"));
    for (const json& c : doc.at("coefficients")) {
        Rational q = rational_from_json(c);
        if (!is_integer(q)) throw std::runtime_error("coefficients must be integers");
        spec.coefficients.push_back(q.get_num());
    }
    for (const json& w : doc.at("initials")) spec.initials.push_back(rational_from_json(w));
    spec.validate();
    return spec;
}

json matrix_rows(const IntMat3& m) {
    json rows = json::array();
    for (int r = 0; r < 3; ++r) {
        json row = json::array();
        for (int c = 0; c < 3; ++c) row.push_back(m.at(r, c).get_str());
        rows.push_back(row);
    }
    return rows;
}

json matrix_rows(const RatMat3& m) {
    json rows = json::array();
    for (int r = 0; r < 3; ++r) {
        json row = json::array();
        for (int c = 0; c < 3; ++c) row.push_back(m.at(r, c).get_str());
        rows.push_back(row);
    }
    return rows;
}

void print_matrix_plain(const RatMat3& m) {
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) std::cout << (c ? " " : "") << m.at(r, c).get_str();
        std::cout << "\n";
    }
}

// ---------------------------------------------------------------------------

int run_eval(const Output& out, const std::string& seq_arg, const std::string& index_arg) {
    IndexRange range = parse_index_arg(index_arg);

    std::optional<BuiltinSeq> builtin;
    if (seq_arg == "T") builtin = BuiltinSeq::Tribonacci;
    if (seq_arg == "K") builtin = BuiltinSeq::TribonacciLucas;

    std::vector<Rational> values;
    std::string seq_name = seq_arg;
    if (builtin) {
        for (BigInt& v : sequence_slice(*builtin, range.lo, range.hi)) values.emplace_back(std::move(v));
    } else {
        SequenceSpec spec = load_spec_file(seq_arg);
        seq_name = spec.name;
        values = sequence_slice(spec, range.lo, range.hi);
    }

    for (long long n = range.lo; n <= range.hi; ++n) {
        const Rational& v = values[static_cast<size_t>(n - range.lo)];
        if (out.structured) {
            out.emit({{"command", "eval"}, {"sequence", seq_name}, {"n", n}, {"value", v.get_str()}});
        } else {
            std::cout << v.get_str() << "\n";
        }
    }
    return 0;
}

int run_matrix(const Output& out, const std::string& family, long long n) {
    IntMat3 m = family == "T" ? t_matrix(n) : k_matrix(n);
    if (out.structured) {
        out.emit({{"command", "matrix"}, {"family", family}, {"n", n}, {"rows", matrix_rows(m)}});
    } else {
        std::cout << to_string(m) << "\n";
    }
    return 0;
}

int run_roots(const Output& out, long bits) {
    CubicRoots roots = tribonacci_roots(bits);
    int digits = display_digits(bits);
    std::string alpha = roots.alpha.str(digits);
    std::string beta_re = roots.beta.real().str(digits);
    std::string beta_im = roots.beta.imag().str(digits);
    if (out.structured) {
        out.emit({{"command", "roots"},
                  {"bits", bits},
                  {"alpha", alpha},
                  {"beta", {{"re", beta_re}, {"im", beta_im}}},
                  {"gamma", {{"re", beta_re}, {"im", "-" + beta_im}}}});
    } else {
        std::cout << "alpha = " << alpha << "\n";
        std::cout << "beta  = " << beta_re << " + " << beta_im << "i\n";
        std::cout << "gamma = " << beta_re << " - " << beta_im << "i\n";
    }
    return 0;
}

int run_binet(const Output& out, const std::string& family, long long n, long bits) {
    Real value = family == "T" ? binet_t(n, bits) : binet_k(n, bits);
    BigInt exact = family == "T" ? tribonacci(n) : tribonacci_lucas(n);
    Real residual = (value - Real::of(exact, bits)).abs();
    int digits = display_digits(bits);
    if (out.structured) {
        out.emit({{"command", "binet"},
                  {"family", family},
                  {"n", n},
                  {"bits", bits},
                  {"value", value.str(digits)},
                  {"exact", exact.get_str()},
                  {"residual", residual.str(6)}});
    } else {
        std::cout << "value    = " << value.str(digits) << "\n";
        std::cout << "exact    = " << exact.get_str() << "\n";
        std::cout << "residual = " << residual.str(6) << "\n";
    }
    return 0;
}

int run_gf(const Output& out, const std::string& kind_arg, long long count) {
    static const std::map<std::string, GFKind> kinds{
        {"T_POS", GFKind::T_POS},       {"K_POS", GFKind::K_POS},   {"T_NEG", GFKind::T_NEG},
        {"K_NEG", GFKind::K_NEG},       {"TMAT_NEG", GFKind::TMAT_NEG},
        {"KMAT_NEG", GFKind::KMAT_NEG},
    };
    auto it = kinds.find(kind_arg);
    if (it == kinds.end())
        throw CLI::ValidationError("kind", "expected one of T_POS K_POS T_NEG K_NEG TMAT_NEG KMAT_NEG");
    GFKind kind = it->second;

    if (is_matrix_kind(kind)) {
        std::vector<IntMat3> mats = matrix_gf_coefficients(kind, count);
        for (long long n = 0; n < count; ++n) {
            const IntMat3& m = mats[static_cast<size_t>(n)];
            if (out.structured) {
                out.emit({{"command", "gf"}, {"kind", kind_arg}, {"n", n}, {"rows", matrix_rows(m)}});
            } else {
                if (n) std::cout << "\n";
                std::cout << to_string(m) << "\n";
            }
        }
        return 0;
    }

    std::vector<Rational> coeffs = gf_coefficients(std::get<RationalGF>(builtin_gf(kind)), count);
    for (long long n = 0; n < count; ++n) {
        const Rational& v = coeffs[static_cast<size_t>(n)];
        if (out.structured) {
            out.emit({{"command", "gf"}, {"kind", kind_arg}, {"n", n}, {"value", v.get_str()}});
        } else {
            std::cout << v.get_str() << "\n";
        }
    }
    return 0;
}

int run_sum(const Output& out, const std::string& family_arg, const std::string& level_arg,
            long long m, long long j, long long n, bool oracle) {
    SumQuery q;
    q.family = family_arg == "T" ? Family::T : Family::K;
    q.level = level_arg == "scalar" ? Level::Scalar : Level::Matrix;
    q.m = m;
    q.j = j;
    q.n = n;
    if (j >= m)
        std::cerr << "note: offset j >= stride m is outside the stated theorem range; "
                     "the closed form still matches the oracle\n";

    SumValue value = oracle ? sum_direct(q) : sum_closed(q);
    json record{{"command", "sum"}, {"family", family_arg}, {"level", level_arg},
                {"m", m},           {"j", j},               {"n", n},
                {"oracle", oracle}};
    if (q.level == Level::Scalar) {
        const Rational& v = std::get<Rational>(value);
        if (out.structured) {
            record["value"] = v.get_str();
            out.emit(record);
        } else {
            std::cout << v.get_str() << "\n";
        }
    } else {
        const RatMat3& v = std::get<RatMat3>(value);
        if (out.structured) {
            record["rows"] = matrix_rows(v);
            out.emit(record);
        } else {
            print_matrix_plain(v);
        }
    }
    return 0;
}

const char* scope_label(FailureScope scope) {
    switch (scope) {
        case FailureScope::None: return "none";
        case FailureScope::Range: return "range";
        case FailureScope::PositiveRange: return "positive-range";
        case FailureScope::NegativeRange: return "negative-range";
    }
    return "?";
}

json report_record(const char* command, const CheckReport& report) {
    json record{{"command", command},
                {"name", report.name},
                {"identity", report.text},
                {"lo", report.lo},
                {"hi", report.hi},
                {"verdict", report.holds() ? "holds" : "fails"},
                {"failures", report.total_failures}};
    if (report.positive_threshold > 0) {
        record["positive_threshold"] = report.positive_threshold;
        record["negative_depth"] = report.negative_depth;
        record["scope"] = scope_label(report.scope);
    }
    if (!report.failures.empty()) {
        const CheckFailure& f = report.failures.front();
        record["first_failure"] = {{"n", f.n}, {"lhs", f.lhs.get_str()}, {"rhs", f.rhs.get_str()}};
    }
    return record;
}

void print_report_plain(const CheckReport& report) {
    std::ostringstream line;
    line << (report.name.empty() ? "<expr>" : report.name);
    for (size_t pad = line.str().size(); pad < 24; ++pad) line << ' ';
    if (report.holds()) {
        line << " holds";
    } else {
        const CheckFailure& f = report.failures.front();
        line << " FAILS  (" << report.total_failures << " failure"
             << (report.total_failures == 1 ? "" : "s");
        if (report.scope == FailureScope::PositiveRange) line << ", positive range";
        if (report.scope == FailureScope::NegativeRange) line << ", negative range";
        line << "; first at n=" << f.n << ": lhs=" << f.lhs.get_str() << " rhs=" << f.rhs.get_str()
             << ")";
    }
    std::cout << line.str() << "\n";
}

int run_check(const Output& out, const std::string& file, const std::string& expr, long long lo,
              long long hi) {
    std::vector<CorpusEntry> entries;
    if (!expr.empty()) {
        entries.push_back({"", expr});
    } else {
        entries = parse_corpus(read_file(file));
    }

    SeqEnv env;
    bool all_hold = true;
    for (const CorpusEntry& entry : entries) {
        CheckReport report = check_identity(parse_identity(entry.text), lo, hi, env, entry.name);
        all_hold = all_hold && report.holds();
        if (out.structured) {
            out.emit(report_record("check", report));
        } else {
            print_report_plain(report);
        }
    }
    return all_hold ? 0 : kExitIdentityFailure;
}

int run_probe(const Output& out, const std::string& expr, long long positive, long long negative) {
    SeqEnv env;
    CheckReport report = conjecture_probe(parse_identity(expr), env, positive, negative);
    if (out.structured) {
        out.emit(report_record("probe", report));
    } else {
        print_report_plain(report);
    }
    return report.holds() ? 0 : kExitIdentityFailure;
}

int run_corpus(const Output& out, long long lo, long long hi) {
    SeqEnv env;
    bool all_hold = true;
    for (const CorpusEntry& entry : builtin_corpus()) {
        CheckReport report = check_identity(parse_identity(entry.text), lo, hi, env, entry.name);
        all_hold = all_hold && report.holds();
        if (out.structured) {
            out.emit(report_record("corpus", report));
        } else {
            print_report_plain(report);
        }
    }
    return all_hold ? 0 : kExitIdentityFailure;
}

int run_bench(const Output& out, long long single_n) {
    std::vector<long long> sizes;
    if (single_n != 0)
        sizes.push_back(single_n);
    else
        sizes = {1000, 10000, 100000};

    bool all_match = true;
    for (long long n : sizes) {
        using clock = std::chrono::steady_clock;
        auto t0 = clock::now();
        BigInt iterative = tribonacci_by_iteration(n);
        auto t1 = clock::now();
        BigInt powered = tribonacci_by_matrix_power(n);
        auto t2 = clock::now();

        double iter_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        double pow_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
        bool match = iterative == powered;
        all_match = all_match && match;
        size_t words = mpz_size(iterative.get_mpz_t());

        if (out.structured) {
            out.emit({{"command", "bench"},
                      {"n", n},
                      {"iterative_ms", iter_ms},
                      {"matrix_power_ms", pow_ms},
                      {"speedup", pow_ms > 0 ? iter_ms / pow_ms : 0.0},
                      {"result_words", words},
                      {"match", match}});
        } else {
            std::cout << "n=" << n << "  iterative " << iter_ms << " ms,  matrix power " << pow_ms
                      << " ms,  speedup " << (pow_ms > 0 ? iter_ms / pow_ms : 0.0) << "x,  result "
                      << words << " limbs,  " << (match ? "values match" : "VALUES DIFFER") << "\n";
        }
    }
    return all_match ? 0 : kExitIdentityFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Tribonacci / Tribonacci-Lucas sequence and matrix toolkit"};
    app.require_subcommand(1);

    Output out;
    app.add_flag("--structured", out.structured, "emit one JSON record per result line");

    const long bits_default = default_bits();

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a sequence at an index or index range");
    std::string eval_seq, eval_index;
    eval_cmd->add_option("sequence", eval_seq, "T, K, or a JSON spec file")->required();
    eval_cmd->add_option("index,--n", eval_index, "n or lo..hi")->required();

    auto* matrix_cmd = app.add_subcommand("matrix", "print the 3x3 matrix sequence member");
    std::string matrix_family;
    long long matrix_n = 0;
    matrix_cmd->add_option("family", matrix_family, "T or K")
        ->required()
        ->check(CLI::IsMember({"T", "K"}));
    matrix_cmd->add_option("n,--n", matrix_n, "signed index")->required();

    auto* roots_cmd = app.add_subcommand("roots", "roots of x^3 - x^2 - x - 1");
    long roots_bits = bits_default;
    roots_cmd->add_option("--bits", roots_bits, "working precision in bits (>= 64)");

    auto* binet_cmd = app.add_subcommand("binet", "numeric Binet value with residual vs exact");
    std::string binet_family;
    long long binet_n = 0;
    long binet_bits = bits_default;
    binet_cmd->add_option("family", binet_family, "T or K")
        ->required()
        ->check(CLI::IsMember({"T", "K"}));
    binet_cmd->add_option("n,--n", binet_n, "signed index")->required();
    binet_cmd->add_option("--bits", binet_bits, "working precision in bits (>= 64)");

    auto* gf_cmd = app.add_subcommand("gf", "expand a builtin generating function");
    std::string gf_kind;
    long long gf_count = 0;
    gf_cmd->add_option("kind", gf_kind, "T_POS K_POS T_NEG K_NEG TMAT_NEG KMAT_NEG")->required();
    gf_cmd->add_option("--count", gf_count, "number of coefficients")->required();

    auto* sum_cmd = app.add_subcommand("sum", "partial sums of negatively indexed terms");
    std::string sum_family = "T", sum_level = "scalar";
    long long sum_m = 1, sum_j = 0, sum_n = 1;
    bool sum_oracle = false;
    sum_cmd->add_option("--family", sum_family)->check(CLI::IsMember({"T", "K"}))->required();
    sum_cmd->add_option("--level", sum_level)->check(CLI::IsMember({"scalar", "matrix"}))->required();
    sum_cmd->add_option("--m", sum_m, "stride (>= 1)")->required();
    sum_cmd->add_option("--j", sum_j, "offset (>= 0)")->required();
    sum_cmd->add_option("--n", sum_n, "term count (>= 1)")->required();
    sum_cmd->add_flag("--oracle", sum_oracle, "force direct term-by-term summation");

    auto* check_cmd = app.add_subcommand("check", "check identities from a file or --expr");
    std::string check_file, check_expr, check_range = "-100..100";
    check_cmd->add_option("file", check_file, "corpus file (name: identity per line)");
    check_cmd->add_option("--expr", check_expr, "a single inline identity");
    check_cmd->add_option("--range", check_range, "lo..hi (default -100..100)");

    auto* probe_cmd = app.add_subcommand("probe", "conjecture probe: positive window, then [-M, N]");
    std::string probe_expr;
    long long probe_positive = 20, probe_negative = 200;
    probe_cmd->add_option("--expr", probe_expr, "identity text")->required();
    probe_cmd->add_option("--positive", probe_positive, "threshold N (default 20)");
    probe_cmd->add_option("--negative", probe_negative, "depth M (default 200)");

    auto* corpus_cmd = app.add_subcommand("corpus", "run the builtin identity corpus");
    std::string corpus_range = "-100..100";
    corpus_cmd->add_option("--range", corpus_range, "lo..hi (default -100..100)");

    auto* bench_cmd = app.add_subcommand("bench", "time iterative vs matrix-power evaluation");
    long long bench_n = 0;
    bench_cmd->add_option("--n", bench_n, "single size (default: 1000, 10000, 100000)");

    // let --structured appear after the subcommand too
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(out, eval_seq, eval_index);
        if (matrix_cmd->parsed()) return run_matrix(out, matrix_family, matrix_n);
        if (roots_cmd->parsed()) return run_roots(out, roots_bits);
        if (binet_cmd->parsed()) return run_binet(out, binet_family, binet_n, binet_bits);
        if (gf_cmd->parsed()) return run_gf(out, gf_kind, gf_count);
        if (sum_cmd->parsed())
            return run_sum(out, sum_family, sum_level, sum_m, sum_j, sum_n, sum_oracle);
        if (check_cmd->parsed()) {
            if (check_file.empty() == check_expr.empty())
                throw CLI::ValidationError("check", "give exactly one of a file or --expr");
            IndexRange r = parse_index_arg(check_range);
            return run_check(out, check_file, check_expr, r.lo, r.hi);
        }
        if (probe_cmd->parsed()) return run_probe(out, probe_expr, probe_positive, probe_negative);
        if (corpus_cmd->parsed()) {
            IndexRange r = parse_index_arg(corpus_range);
            return run_corpus(out, r.lo, r.hi);
        }
        if (bench_cmd->parsed()) return run_bench(out, bench_n);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
