#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qpnls/io.hpp"
#include "qpnls/omega.hpp"
#include "qpnls/picard.hpp"
#include "qpnls/qp_function.hpp"
#include "qpnls/resonance.hpp"
#include "qpnls/schrodinger.hpp"

namespace py = pybind11;
using namespace qpnls;

namespace {

using Pair = std::pair<long long, long long>;

long long narrow(Int v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw OverflowError("value does not fit a 64-bit integer: " + to_string(v));
    return static_cast<long long>(v);
}

Pair to_pair(const OmegaElement& k) { return {narrow(k.kx), narrow(k.ky)}; }

OmegaElement from_pair(const Pair& p) { return {p.first, p.second}; }

QPFunction from_dict(const std::map<Pair, Complex>& coeffs) {
    QPFunction::CoeffMap m;
    for (const auto& [k, c] : coeffs) m[from_pair(k)] += c;
    return QPFunction(std::move(m));
}

std::map<Pair, Complex> to_dict(const QPFunction& u) {
    std::map<Pair, Complex> out;
    for (const auto& [k, c] : u.coeffs()) out.emplace(to_pair(k), c);
    return out;
}

using Quad = std::tuple<Pair, Pair, Pair, Pair, Pair>;

Quad to_tuple(const ResonanceQuadruple& q) {
    return {to_pair(q.k1), to_pair(q.k2), to_pair(q.k3), to_pair(q.k), to_pair(q.phi)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact lattice arithmetic, Strichartz resonant sums, resonance counting and Picard iterates "
              "for quasiperiodic data with frequencies in Z + sqrt(2) Z.";

    py::register_exception<OverflowError>(m, "LatticeOverflowError", PyExc_OverflowError);

    py::class_<OmegaElement>(m, "OmegaElement")
        .def(py::init([](long long kx, long long ky) { return OmegaElement{kx, ky}; }), py::arg("kx") = 0,
             py::arg("ky") = 0)
        .def_property_readonly("kx", [](const OmegaElement& k) { return narrow(k.kx); })
        .def_property_readonly("ky", [](const OmegaElement& k) { return narrow(k.ky); })
        .def("__add__", [](const OmegaElement& a, const OmegaElement& b) { return a + b; })
        .def("__sub__", [](const OmegaElement& a, const OmegaElement& b) { return a - b; })
        .def("__mul__", [](const OmegaElement& a, const OmegaElement& b) { return a * b; })
        .def("__neg__", [](const OmegaElement& a) { return -a; })
        .def("__eq__", [](const OmegaElement& a, const OmegaElement& b) { return a == b; })
        .def("__hash__", [](const OmegaElement& a) { return std::hash<OmegaElement>{}(a); })
        .def("__float__", [](const OmegaElement& a) { return embed(a); })
        .def("__repr__", [](const OmegaElement& a) { return "OmegaElement(" + format(a) + ")"; })
        .def("__str__", [](const OmegaElement& a) { return format(a); });

    m.def("parse_omega", [](const std::string& s) { return parse_omega(s); }, py::arg("text"));
    m.def("square", &square, py::arg("k"));
    m.def("embed", &embed, py::arg("k"));
    m.def("abs_leq",
          [](const OmegaElement& k, long long num, long long den) { return abs_leq(k, Rational(num, den)); },
          py::arg("k"), py::arg("num"), py::arg("den") = 1, "Exact test |k| <= num/den.");
    m.def("cmp", [](const OmegaElement& a, const OmegaElement& b) {
        auto c = cmp(a, b);
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    });

    m.def("cosine_pair_datum", [] { return to_dict(cosine_pair_datum()); },
          "Coefficients of cos(x) + cos(sqrt(2) x) as {(kx, ky): amplitude}.");
    m.def("evaluate", [](const std::map<Pair, Complex>& u, double x) { return evaluate(from_dict(u), x); });
    m.def("multiply", [](const std::map<Pair, Complex>& u, const std::map<Pair, Complex>& v) {
        return to_dict(multiply(from_dict(u), from_dict(v)));
    });
    m.def("conjugate", [](const std::map<Pair, Complex>& u) { return to_dict(conjugate(from_dict(u))); });
    m.def("l2_norm", [](const std::map<Pair, Complex>& u) { return l2_norm(from_dict(u)); });
    m.def(
        "lp_norm_estimate",
        [](const std::map<Pair, Complex>& u, double p, double L, std::size_t steps) {
            QPFunction f = from_dict(u);
            if (steps == 0) steps = default_steps(f.max_abs_frequency(), L);
            LpEstimate e = lp_norm_estimate(f, p, L, steps);
            return std::make_tuple(e.value, e.at_quarter, e.at_half);
        },
        py::arg("u"), py::arg("p"), py::arg("L"), py::arg("steps") = 0);

    m.def("propagate",
          [](const std::map<Pair, Complex>& g, double t) { return to_dict(propagate(from_dict(g), t)); });
    m.def("enumerate_pairs", [](const OmegaElement& p, const OmegaElement& q) {
        std::vector<std::pair<Pair, Pair>> out;
        for (const auto& [l1, l2] : enumerate_pairs(p, q).pairs) out.emplace_back(to_pair(l1), to_pair(l2));
        return out;
    });
    m.def(
        "strichartz_l4_norm",
        [](const std::map<Pair, Complex>& g, unsigned workers) { return strichartz_l4_norm(from_dict(g), workers); },
        py::arg("g"), py::arg("workers") = 1);
    m.def(
        "strichartz_ratio",
        [](const std::map<Pair, Complex>& g, unsigned workers) { return strichartz_ratio(from_dict(g), workers); },
        py::arg("g"), py::arg("workers") = 1);
    m.def(
        "l4_norm_ergodic_crosscheck",
        [](const std::map<Pair, Complex>& g, double T, double L, std::size_t steps, unsigned workers) {
            py::gil_scoped_release release;
            return l4_norm_ergodic_crosscheck(from_dict(g), T, L, steps, workers);
        },
        py::arg("g"), py::arg("T"), py::arg("L"), py::arg("steps"), py::arg("workers") = 1);
    m.def(
        "apq_audit",
        [](long long box, unsigned workers) {
            ApqAuditResult r = apq_audit(box, workers);
            py::dict d;
            d["ordered_pairs"] = r.ordered_pairs;
            d["keys"] = r.keys;
            d["max_cardinality"] = r.max_cardinality;
            d["mismatches"] = r.mismatches;
            d["histogram"] = r.cardinality_histogram;
            return d;
        },
        py::arg("box"), py::arg("workers") = 1);

    m.def("phi", &phi, py::arg("k1"), py::arg("k3"), py::arg("k"));
    m.def(
        "gamma_count",
        [](const OmegaElement& k, long long n, const std::string& phi_bound, unsigned workers, long long max_n) {
            py::gil_scoped_release release;
            return gamma_count_bruteforce(k, n, {Rational::parse(phi_bound), workers, max_n, false}).count;
        },
        py::arg("k"), py::arg("N"), py::arg("phi_bound") = "1", py::arg("workers") = 1,
        py::arg("max_n") = kDefaultMaxN);
    m.def(
        "gamma_construct",
        [](const OmegaElement& k, long long n, const std::string& phi_bound, bool include_trivial) {
            std::vector<Quad> out;
            for (const auto& q : gamma_lower_bound_construct(k, n, {Rational::parse(phi_bound), include_trivial}))
                out.push_back(to_tuple(q));
            return out;
        },
        py::arg("k"), py::arg("N"), py::arg("phi_bound") = "1", py::arg("include_trivial_pell") = false,
        "Quadruples (k1, k2, k3, k, phi) as coordinate pairs.");
    m.def(
        "pell_solutions",
        [](const py::int_& max_coord, bool include_trivial) {
            BigInt limit(py::cast<std::string>(py::str(static_cast<py::handle>(max_coord))));
            py::list out;
            for (const auto& s : pell_solutions(limit, include_trivial)) {
                out.append(py::make_tuple(py::int_(py::str(s.a.str())), py::int_(py::str(s.c.str()))));
            }
            return out;
        },
        py::arg("max_coord"), py::arg("include_trivial") = false);
    m.def(
        "strip_points",
        [](long long max_abs, const std::string& bound) {
            std::vector<Pair> out;
            for (auto [p, q] : strip_points(max_abs, Rational::parse(bound))) out.emplace_back(narrow(p), narrow(q));
            return out;
        },
        py::arg("max_abs"), py::arg("bound") = "1");

    m.def(
        "picard_first_iterate",
        [](const std::map<Pair, Complex>& u0, double t, double lambda) {
            return to_dict(picard_first_iterate(from_dict(u0), t, lambda));
        },
        py::arg("u0"), py::arg("t"), py::arg("lam") = kDefaultNonlinearity);
    m.def(
        "resonant_split",
        [](const std::map<Pair, Complex>& u0, double t, double lambda, const std::string& bound) {
            auto [near, far] = resonant_split(from_dict(u0), t, lambda, Rational::parse(bound));
            return std::make_pair(to_dict(near), to_dict(far));
        },
        py::arg("u0"), py::arg("t"), py::arg("lam") = kDefaultNonlinearity, py::arg("phi_bound") = "1");
    m.def(
        "quadrature_oracle",
        [](const std::map<Pair, Complex>& u0, double t, double lambda, std::size_t steps) {
            return to_dict(quadrature_oracle(from_dict(u0), t, lambda, steps));
        },
        py::arg("u0"), py::arg("t"), py::arg("lam") = kDefaultNonlinearity, py::arg("steps") = 10000);

    m.def("to_json", [](const std::map<Pair, Complex>& u) { return qp_to_json(from_dict(u)).dump(); });
    m.def("from_json",
          [](const std::string& text) { return to_dict(qp_from_json(nlohmann::json::parse(text))); });
}
