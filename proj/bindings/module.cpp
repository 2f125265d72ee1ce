// Python bindings for the main trimat operations. Exact integers cross
// over as Python ints, exact rationals as fractions.Fraction.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <string>
#include <vector>

#include "trimat/analytic.hpp"
#include "trimat/genfunc.hpp"
#include "trimat/identity.hpp"
#include "trimat/matrix.hpp"
#include "trimat/sequence.hpp"
#include "trimat/sums.hpp"

namespace py = pybind11;
using namespace trimat;

namespace {

py::int_ py_int(const BigInt& v) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::object py_fraction(const Rational& q) {
    static py::object fraction_type = py::module_::import("fractions").attr("Fraction");
    return fraction_type(py_int(q.get_num()), py_int(q.get_den()));
}

Rational rational_from(const py::handle& obj) {
    // int, Fraction, and "p/q" strings all stringify to something
    // mpq_set_str understands
    std::string text = py::str(obj).cast<std::string>();
    Rational q;
    if (q.set_str(text, 10) != 0) throw py::value_error("not a rational: " + text);
    q.canonicalize();
    return q;
}

py::list py_rows(const IntMat3& m) {
    py::list rows;
    for (int r = 0; r < 3; ++r) {
        py::list row;
        for (int c = 0; c < 3; ++c) row.append(py_int(m.at(r, c)));
        rows.append(row);
    }
    return rows;
}

py::list py_rows(const RatMat3& m) {
    py::list rows;
    for (int r = 0; r < 3; ++r) {
        py::list row;
        for (int c = 0; c < 3; ++c) row.append(py_fraction(m.at(r, c)));
        rows.append(row);
    }
    return rows;
}

SequenceSpec spec_from(const std::vector<long long>& coefficients, const py::sequence& initials,
                       const std::string& name) {
    SequenceSpec spec;
    spec.name = name;
    for (long long c : coefficients) spec.coefficients.emplace_back(static_cast<long>(c));
    for (const py::handle& w : initials) spec.initials.push_back(rational_from(w));
    spec.validate();
    return spec;
}

Family family_from(const std::string& name) {
    if (name == "T") return Family::T;
    if (name == "K") return Family::K;
    throw py::value_error("family must be 'T' or 'K'");
}

GFKind gf_kind_from(const std::string& name) {
    if (name == "T_POS") return GFKind::T_POS;
    if (name == "K_POS") return GFKind::K_POS;
    if (name == "T_NEG") return GFKind::T_NEG;
    if (name == "K_NEG") return GFKind::K_NEG;
    if (name == "TMAT_NEG") return GFKind::TMAT_NEG;
    if (name == "KMAT_NEG") return GFKind::KMAT_NEG;
    throw py::value_error("unknown generating-function kind: " + name);
}

py::dict report_dict(const CheckReport& report) {
    py::dict d;
    d["name"] = report.name;
    d["identity"] = report.text;
    d["lo"] = report.lo;
    d["hi"] = report.hi;
    d["holds"] = report.holds();
    d["failures"] = report.total_failures;
    switch (report.scope) {
        case FailureScope::None: d["scope"] = "none"; break;
        case FailureScope::Range: d["scope"] = "range"; break;
        case FailureScope::PositiveRange: d["scope"] = "positive-range"; break;
        case FailureScope::NegativeRange: d["scope"] = "negative-range"; break;
    }
    py::list failures;
    for (const CheckFailure& f : report.failures) {
        py::dict fd;
        fd["n"] = f.n;
        fd["lhs"] = py_fraction(f.lhs);
        fd["rhs"] = py_fraction(f.rhs);
        failures.append(fd);
    }
    d["failure_list"] = failures;
    return d;
}

SumQuery query_from(const std::string& family, const std::string& level, long long m, long long j,
                    long long n) {
    SumQuery q;
    q.family = family_from(family);
    if (level == "scalar")
        q.level = Level::Scalar;
    else if (level == "matrix")
        q.level = Level::Matrix;
    else
        throw py::value_error("level must be 'scalar' or 'matrix'");
    q.m = m;
    q.j = j;
    q.n = n;
    return q;
}

}  // namespace

PYBIND11_MODULE(_trimat, m) {
    m.doc() = "Exact Tribonacci / Tribonacci-Lucas sequences, matrices, and identity checking";
    m.attr("__version__") = "0.1.0";

    m.def("tribonacci", [](long long n) { return py_int(tribonacci(n)); }, py::arg("n"),
          "T(n) for any signed n");
    m.def("tribonacci_lucas", [](long long n) { return py_int(tribonacci_lucas(n)); }, py::arg("n"),
          "K(n) for any signed n");

    m.def(
        "sequence_slice",
        [](const std::string& family, long long lo, long long hi) {
            BuiltinSeq seq = family_from(family) == Family::T ? BuiltinSeq::Tribonacci
                                                              : BuiltinSeq::TribonacciLucas;
            py::list out;
            for (const BigInt& v : sequence_slice(seq, lo, hi)) out.append(py_int(v));
            return out;
        },
        py::arg("family"), py::arg("lo"), py::arg("hi"));

    m.def(
        "eval_spec",
        [](const std::vector<long long>& coefficients, const py::sequence& initials, long long n,
           const std::string& name) {
            return py_fraction(eval_sequence(spec_from(coefficients, initials, name), n));
        },
        py::arg("coefficients"), py::arg("initials"), py::arg("n"), py::arg("name") = "user",
        "evaluate an order-k recurrence at any signed index");

    m.def(
        "spec_slice",
        [](const std::vector<long long>& coefficients, const py::sequence& initials, long long lo,
           long long hi, const std::string& name) {
            py::list out;
            for (const Rational& v : sequence_slice(spec_from(coefficients, initials, name), lo, hi))
                out.append(py_fraction(v));
            return out;
        },
        py::arg("coefficients"), py::arg("initials"), py::arg("lo"), py::arg("hi"),
        py::arg("name") = "user");

    m.def("t_matrix", [](long long n) { return py_rows(t_matrix(n)); }, py::arg("n"));
    m.def("k_matrix", [](long long n) { return py_rows(k_matrix(n)); }, py::arg("n"));
    m.def(
        "kk_product_expansion",
        [](long long mm, long long nn, const std::string& form) {
            KKForm f = form == "A" ? KKForm::A : form == "B" ? KKForm::B : KKForm::C;
            if (form != "A" && form != "B" && form != "C")
                throw py::value_error("form must be 'A', 'B', or 'C'");
            return py_rows(kk_product_expansion(mm, nn, f));
        },
        py::arg("m"), py::arg("n"), py::arg("form"));

    m.def(
        "roots",
        [](long bits) {
            CubicRoots r = tribonacci_roots(bits);
            py::dict d;
            d["bits"] = bits;
            d["alpha"] = r.alpha.to_double();
            d["alpha_str"] = r.alpha.str(std::max(20L, bits * 3 / 10));
            d["beta"] = std::complex<double>(r.beta.real().to_double(), r.beta.imag().to_double());
            return d;
        },
        py::arg("bits") = 192);

    m.def("binet_t", [](long long n, long bits) { return binet_t(n, bits).to_double(); },
          py::arg("n"), py::arg("bits") = 192);
    m.def("binet_k", [](long long n, long bits) { return binet_k(n, bits).to_double(); },
          py::arg("n"), py::arg("bits") = 192);
    m.def(
        "binet_t_rounded",
        [](long long n, long bits) {
            RoundedValue v = binet_t_rounded(n, bits);
            return py::make_tuple(py_int(v.value), v.residual.to_double());
        },
        py::arg("n"), py::arg("bits") = 192, "nearest integer plus residual");
    m.def("consecutive_ratio",
          [](long long n, long bits) { return consecutive_ratio(n, bits).to_double(); }, py::arg("n"),
          py::arg("bits") = 128);

    m.def(
        "gf_coefficients",
        [](const std::string& kind, long long count) {
            GFKind k = gf_kind_from(kind);
            if (is_matrix_kind(k)) {
                py::list out;
                for (const IntMat3& mat : matrix_gf_coefficients(k, count)) out.append(py_rows(mat));
                return out;
            }
            py::list out;
            for (const Rational& v : gf_coefficients(std::get<RationalGF>(builtin_gf(k)), count))
                out.append(py_fraction(v));
            return out;
        },
        py::arg("kind"), py::arg("count"));

    m.def(
        "sum_scalar",
        [](const std::string& family, long long mm, long long jj, long long nn, bool oracle) {
            SumQuery q = query_from(family, "scalar", mm, jj, nn);
            return py_fraction(std::get<Rational>(oracle ? sum_direct(q) : sum_closed(q)));
        },
        py::arg("family"), py::arg("m"), py::arg("j"), py::arg("n"), py::arg("oracle") = false);

    m.def(
        "sum_matrix",
        [](const std::string& family, long long mm, long long jj, long long nn, bool oracle) {
            SumQuery q = query_from(family, "matrix", mm, jj, nn);
            return py_rows(std::get<RatMat3>(oracle ? sum_direct(q) : sum_closed(q)));
        },
        py::arg("family"), py::arg("m"), py::arg("j"), py::arg("n"), py::arg("oracle") = false);

    m.def(
        "check_identity",
        [](const std::string& text, long long lo, long long hi) {
            SeqEnv env;
            return report_dict(check_identity(parse_identity(text), lo, hi, env));
        },
        py::arg("text"), py::arg("lo") = -100, py::arg("hi") = 100);

    m.def(
        "conjecture_probe",
        [](const std::string& text, long long positive, long long negative) {
            SeqEnv env;
            return report_dict(conjecture_probe(parse_identity(text), env, positive, negative));
        },
        py::arg("text"), py::arg("positive") = 20, py::arg("negative") = 200);

    m.def("corpus", []() {
        py::list out;
        for (const CorpusEntry& e : builtin_corpus()) out.append(py::make_tuple(e.name, e.text));
        return out;
    });

    py::register_exception<ParseError>(m, "IdentityParseError", PyExc_ValueError);
    py::register_exception<UnknownSequence>(m, "UnknownSequenceError", PyExc_KeyError);
    py::register_exception<SingularMatrix>(m, "SingularMatrixError", PyExc_ArithmeticError);
    py::register_exception<ZeroDenominator>(m, "ZeroDenominatorError", PyExc_ZeroDivisionError);
    py::register_exception<RoundingError>(m, "BinetRoundingError", PyExc_ArithmeticError);
}
