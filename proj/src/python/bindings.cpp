#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zakframe/framescan.hpp"
#include "zakframe/identities.hpp"

namespace py = pybind11;
using namespace zakframe;
using hermite::HermiteWindow;
using xprec::Precision;
using xprec::XReal;
using zak::QuarticSurd;
using zak::Rational;

namespace {

Rational to_rational(const std::pair<long long, long long>& fr) {
    return zak::make_rational(fr.first, fr.second);
}

std::pair<long long, long long> from_rational(const Rational& r) { return {r.num, r.den}; }

zak::ZakParameter to_param(const py::object& lam) {
    if (py::isinstance<QuarticSurd>(lam)) return zak::ZakParameter(lam.cast<QuarticSurd>());
    return zak::ZakParameter(lam.cast<double>());
}

py::dict eval_to_dict(const zak::ZakEvaluation& e) {
    py::dict d;
    d["value"] = e.value;
    d["truncation_bound"] = e.truncation_bound;
    d["terms_used"] = e.terms_used;
    return d;
}

py::dict estimate_to_dict(const framescan::FrameBoundsEstimate& e) {
    py::dict d;
    d["a"] = e.a;
    d["b"] = e.b;
    d["p"] = e.p;
    d["q"] = e.q;
    d["sqrtA"] = e.sqrtA;
    d["sqrtB"] = e.sqrtB;
    d["argmin"] = py::make_tuple(from_rational(e.argmin_x), from_rational(e.argmin_gamma));
    d["max_truncation"] = e.max_truncation;
    return d;
}

framescan::GridSpec make_grid(int nx, int ngamma,
                              const std::optional<std::vector<std::pair<std::pair<long long, long long>,
                                                                        std::pair<long long, long long>>>>&
                                  probes,
                              std::optional<int> eigenclass, int q) {
    framescan::GridSpec g;
    g.nx = nx;
    g.ngamma = ngamma;
    if (probes) {
        for (const auto& pr : *probes) g.probe_points.push_back({to_rational(pr.first), to_rational(pr.second)});
    } else {
        g.probe_points = framescan::scan_probes(eigenclass, q);
    }
    return g;
}

}  // namespace

PYBIND11_MODULE(_zakframe, m) {
    m.doc() = "Zak transforms, Zibulski-Zeevi frame bounds and Hermite series identities";

    py::class_<HermiteWindow>(m, "Window")
        .def(py::init([](const std::string& spec) { return HermiteWindow::parse(spec); }), py::arg("spec"))
        .def(py::init([](const std::vector<std::pair<int, double>>& terms) {
                 std::vector<hermite::Term> ts;
                 for (auto [n, c] : terms) ts.push_back({n, c});
                 return HermiteWindow(std::move(ts));
             }),
             py::arg("terms"))
        .def_property_readonly("eigenclass",
                               [](const HermiteWindow& w) -> py::object {
                                   auto c = w.eigenclass();
                                   return c ? py::cast(*c) : py::none();
                               })
        .def_property_readonly("max_order", &HermiteWindow::max_order)
        .def_property_readonly("spec", &HermiteWindow::spec_string)
        .def("__call__", [](const HermiteWindow& w, double x) { return hermite::window_eval(w, x); },
             py::arg("x"))
        .def("__repr__",
             [](const HermiteWindow& w) { return "Window('" + w.spec_string() + "')"; });

    py::class_<QuarticSurd>(m, "QuarticSurd")
        .def(py::init(&QuarticSurd::make), py::arg("u"), py::arg("v"), py::arg("w"),
             "the exact scalar (u/v) * w^(1/4)")
        .def_readonly("u", &QuarticSurd::u)
        .def_readonly("v", &QuarticSurd::v)
        .def_readonly("w", &QuarticSurd::w)
        .def("reciprocal", &QuarticSurd::reciprocal)
        .def("__float__", &QuarticSurd::to_double)
        .def("__repr__", [](const QuarticSurd& s) { return s.to_string(); });

    m.def("sqrt_surd", &QuarticSurd::sqrt_of, py::arg("s"), "sqrt(s) as an exact quartic surd");

    m.def("hermite_eval", py::overload_cast<int, double>(&hermite::hermite_eval), py::arg("n"),
          py::arg("x"));
    m.def("rodrigues_coefficients",
          [](int n) { return hermite::RodriguesPolynomial::compute(n).coefficients(); }, py::arg("n"));

    m.def(
        "zak_eval",
        [](const HermiteWindow& w, const py::object& lam, std::pair<long long, long long> x,
           std::pair<long long, long long> gamma, double tol) {
            return eval_to_dict(zak::zak_eval(w, to_param(lam), to_rational(x), to_rational(gamma), tol));
        },
        py::arg("window"), py::arg("lam"), py::arg("x"), py::arg("gamma"), py::arg("tol") = 1e-13,
        "Z_lam window(x, gamma) with a certified truncation bound; x and gamma are (num, den) fractions");

    m.def(
        "zak_eval_dual",
        [](const HermiteWindow& w, const py::object& lam, std::pair<long long, long long> x,
           std::pair<long long, long long> gamma, double tol) {
            return eval_to_dict(zak::zak_eval_dual(w, to_param(lam), to_rational(x), to_rational(gamma), tol));
        },
        py::arg("window"), py::arg("lam"), py::arg("x"), py::arg("gamma"), py::arg("tol") = 1e-13,
        "the Poisson-dual evaluation route (needs a window with an eigenclass)");

    m.def(
        "zak_eval_hiprec",
        [](const HermiteWindow& w, const QuarticSurd& lam, std::pair<long long, long long> x,
           std::pair<long long, long long> gamma, const std::string& tol, int bits) {
            Precision p = xprec::precision_from_bits(bits);
            auto e = zak::zak_eval_x(w, lam, to_rational(x), to_rational(gamma), XReal::parse(tol, p), p);
            py::dict d;
            d["abs"] = e.value.abs().to_string(25);
            d["re"] = e.value.re.to_string(25);
            d["im"] = e.value.im.to_string(25);
            d["truncation_bound"] = e.truncation_bound.to_string(8);
            d["terms_used"] = e.terms_used;
            return d;
        },
        py::arg("window"), py::arg("lam"), py::arg("x"), py::arg("gamma"), py::arg("tol") = "1e-30",
        py::arg("bits") = 212, "extended-precision evaluation with an exact quartic-surd parameter");

    m.def(
        "zz_matrix",
        [](const HermiteWindow& w, const py::object& b, int p, int q, std::pair<long long, long long> x,
           std::pair<long long, long long> gamma, double tol) {
            zz::ZZMatrixSample s =
                zz::zz_matrix(w, to_param(b), zz::RationalDensity(p, q), to_rational(x), to_rational(gamma), tol);
            zz::fill_singular_extremes(s);
            py::list rows;
            for (int k = 0; k < s.p; ++k) {
                py::list row;
                for (int l = 0; l < s.q; ++l) row.append(s.at(k, l));
                rows.append(row);
            }
            py::dict d;
            d["matrix"] = rows;
            d["sigma_min"] = s.sigma_min;
            d["sigma_max"] = s.sigma_max;
            d["truncation_bound"] = s.truncation_bound;
            return d;
        },
        py::arg("window"), py::arg("b"), py::arg("p"), py::arg("q"), py::arg("x"), py::arg("gamma"),
        py::arg("tol") = 1e-13);

    m.def(
        "singular_extremes",
        [](const std::vector<std::vector<std::complex<double>>>& matrix) {
            int p = static_cast<int>(matrix.size());
            int q = p > 0 ? static_cast<int>(matrix[0].size()) : 0;
            std::vector<std::complex<double>> flat;
            for (const auto& row : matrix) {
                if (static_cast<int>(row.size()) != q)
                    throw std::invalid_argument("ragged matrix");
                flat.insert(flat.end(), row.begin(), row.end());
            }
            return zz::singular_extremes(flat, p, q);
        },
        py::arg("matrix"));

    m.def(
        "integer_oversampled_bound",
        [](const HermiteWindow& w, const py::object& b, int q, std::pair<long long, long long> x,
           std::pair<long long, long long> gamma, double tol) {
            return zz::integer_oversampled_bound(w, to_param(b), q, to_rational(x), to_rational(gamma), tol);
        },
        py::arg("window"), py::arg("b"), py::arg("q"), py::arg("x"), py::arg("gamma"),
        py::arg("tol") = 1e-13);

    m.def(
        "estimate_bounds",
        [](const HermiteWindow& w, double a, double b, int p, int q, int nx, int ngamma,
           const std::optional<std::vector<std::pair<std::pair<long long, long long>,
                                                     std::pair<long long, long long>>>>& probes,
           double tol, int threads) {
            auto grid = make_grid(nx, ngamma, probes, w.eigenclass(), q);
            return estimate_to_dict(
                framescan::estimate_bounds(w, a, b, zz::RationalDensity(p, q), grid, tol, threads));
        },
        py::arg("window"), py::arg("a"), py::arg("b"), py::arg("p"), py::arg("q"), py::arg("nx") = 51,
        py::arg("ngamma") = 51, py::arg("probes") = py::none(), py::arg("tol") = 1e-13,
        py::arg("threads") = 0);

    m.def(
        "scan_hyperbola",
        [](const HermiteWindow& w, int p, int q, double b_min, double b_max, int samples, int grid_n,
           const std::vector<double>& probe_b, double tol, int threads) {
            framescan::GridSpec grid = make_grid(grid_n, grid_n, std::nullopt, w.eigenclass(), q);
            auto rows = framescan::scan_hyperbola(w, zz::RationalDensity(p, q), b_min, b_max, samples, grid,
                                                  tol, probe_b, threads);
            py::list out;
            for (const auto& r : rows) out.append(estimate_to_dict(r));
            return out;
        },
        py::arg("window"), py::arg("p"), py::arg("q"), py::arg("b_min"), py::arg("b_max"),
        py::arg("samples") = 100, py::arg("grid_n") = 51, py::arg("probe_b") = std::vector<double>{},
        py::arg("tol") = 1e-13, py::arg("threads") = 0);

    m.def(
        "verify",
        [](const std::string& selector, int bits, const std::string& tol, int m_max, unsigned seed) {
            Precision p = xprec::precision_from_bits(bits);
            py::list out;
            for (const auto& c : identities::catalog(m_max, seed)) {
                if (selector != "all" && c.id != selector) continue;
                auto rep = identities::verify(c, p, XReal::parse(tol, p));
                py::dict d;
                d["id"] = c.id;
                d["params"] = c.params;
                d["window"] = c.window.spec_string();
                d["pass"] = rep.pass;
                d["residual"] = rep.residual_str;
                d["truncation_bound"] = rep.truncation_str;
                d["terms_used"] = rep.terms_used;
                d["basis"] = c.proven ? "proven" : "verified-numerically";
                out.append(d);
            }
            return out;
        },
        py::arg("selector") = "all", py::arg("bits") = 212, py::arg("tol") = "1e-30", py::arg("m_max") = 2,
        py::arg("seed") = identities::kDefaultSeed);

    m.def(
        "negative_control",
        [](const HermiteWindow& w, const QuarticSurd& lam, std::pair<long long, long long> x,
           std::pair<long long, long long> gamma, int bits) {
            return identities::negative_control(w, lam, to_rational(x), to_rational(gamma),
                                                xprec::precision_from_bits(bits))
                .to_double();
        },
        py::arg("window"), py::arg("lam"), py::arg("x"), py::arg("gamma"), py::arg("bits") = 106);

    m.def("obstruction_points", [] {
        py::list out;
        for (const auto& pt : framescan::obstruction_points()) {
            py::dict d;
            d["id"] = pt.id;
            d["a"] = pt.a.to_double();
            d["b"] = pt.b.to_double();
            d["p"] = pt.p;
            d["q"] = pt.q;
            py::list classes;
            for (const auto& wit : pt.witnesses) classes.append(wit.eigenclass);
            d["eigenclasses"] = classes;
            out.append(d);
        }
        return out;
    });

    m.def(
        "certify_obstruction",
        [](const HermiteWindow& w, int point_id, int bits, const std::string& tol) {
            const auto& pts = framescan::obstruction_points();
            if (point_id < 0 || point_id >= static_cast<int>(pts.size()))
                throw std::invalid_argument("obstruction point id must be 0..4");
            Precision p = xprec::precision_from_bits(bits);
            auto rep = framescan::certify_obstruction(w, pts[point_id], XReal::parse(tol, p), p);
            py::dict d;
            d["point_id"] = rep.point_id;
            d["pass"] = rep.pass;
            d["residual"] = rep.residual;
            d["residual_str"] = rep.residual_str;
            d["witness"] = py::make_tuple(from_rational(rep.witness_x), from_rational(rep.witness_gamma));
            d["note"] = rep.note;
            return d;
        },
        py::arg("window"), py::arg("point_id"), py::arg("bits") = 106, py::arg("tol") = "1e-25");

    m.attr("__version__") = "1.0.0";
}
