#include "dbarrier/errors.hpp"
#include "dbarrier/european.hpp"
#include "dbarrier/levy.hpp"
#include "dbarrier/pricing.hpp"
#include "dbarrier/reference_tables.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

namespace py = pybind11;
using namespace dbarrier;

namespace {

PriceRequest make_request(const LevyModel& model, const PayoffSpec& payoff, double T, std::vector<double> xs,
                          const std::string& method, double tolerance, bool dual_run,
                          const std::optional<std::string>& block, int M0, unsigned threads)
{
    PriceRequest r;
    r.model = model;
    r.payoff = payoff;
    r.T = T;
    r.xs = std::move(xs);
    r.method = parse_method(method);
    r.tolerance = tolerance;
    r.variants = dual_run ? VariantPolicy::DualRun : VariantPolicy::Single;
    if (block) {
        if (*block == "truncated")
            r.block = SeriesBlock::Truncated;
        else if (*block == "resolvent_inverse")
            r.block = SeriesBlock::ResolventInverse;
        else if (*block == "resolvent_solve")
            r.block = SeriesBlock::ResolventSolve;
        else if (*block != "auto")
            throw ValidationError("unknown block '" + *block + "'");
    }
    r.M0 = M0;
    r.threads = threads;
    return r;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Double-barrier option prices for KoBoL processes";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    py::class_<LevyModel>(m, "LevyModel")
        .def_static("kobol", &LevyModel::kobol, py::arg("nu"), py::arg("lambda_plus"),
                    py::arg("lambda_minus"), py::arg("c"), py::arg("mu") = 0.0)
        .def_static("kobol_from_m2", &LevyModel::kobol_from_m2, py::arg("nu"), py::arg("lambda_plus"),
                    py::arg("lambda_minus"), py::arg("m2"), py::arg("mu") = 0.0,
                    "Symmetric KoBoL model with the second moment of X_1 set to m2.")
        .def_static("gaussian", &LevyModel::gaussian, py::arg("sigma"), py::arg("mu") = 0.0)
        .def_readonly("nu_plus", &LevyModel::nu_plus)
        .def_readonly("nu_minus", &LevyModel::nu_minus)
        .def_readonly("lambda_plus", &LevyModel::lambda_plus)
        .def_readonly("lambda_minus", &LevyModel::lambda_minus)
        .def_readonly("c_plus", &LevyModel::c_plus)
        .def_readonly("c_minus", &LevyModel::c_minus)
        .def_readonly("mu", &LevyModel::mu)
        .def("order", &LevyModel::order)
        .def("psi", [](const LevyModel& self, cplx xi) { return psi(self, xi); }, py::arg("xi"),
             "Characteristic exponent: E[exp(i xi X_t)] = exp(-t psi(xi)).");

    py::class_<PayoffSpec>(m, "Payoff")
        .def_static("no_touch", &PayoffSpec::no_touch, py::arg("h_minus"), py::arg("h_plus"))
        .def_static("digital_put", &PayoffSpec::digital_put, py::arg("a"), py::arg("h_minus"),
                    py::arg("h_plus"))
        .def_static("call", &PayoffSpec::call, py::arg("a"), py::arg("h_minus"), py::arg("h_plus"))
        .def_property_readonly("kind", [](const PayoffSpec& p) { return payoff_name(p.kind); })
        .def_readonly("h_minus", &PayoffSpec::h_minus)
        .def_readonly("h_plus", &PayoffSpec::h_plus)
        .def_readonly("a", &PayoffSpec::a);

    m.def(
        "price",
        [](const LevyModel& model, const PayoffSpec& payoff, double T, std::vector<double> xs,
           const std::string& method, double tolerance, bool dual_run, std::optional<std::string> block,
           int M0, unsigned threads) {
            PriceReport rep;
            {
                py::gil_scoped_release release;
                rep = price(make_request(model, payoff, T, std::move(xs), method, tolerance, dual_run,
                                         block, M0, threads));
            }
            py::dict d;
            d["x"] = rep.xs;
            d["value"] = rep.values;
            d["error_estimate"] = rep.error_estimates;
            d["knocked"] = std::vector<bool>(rep.knocked.begin(), rep.knocked.end());
            d["method"] = method_name(rep.method);
            d["block"] = block_name(rep.block);
            d["elapsed_ms"] = rep.wall_ms;
            d["gwr_fallback"] = rep.fell_back;
            d["degraded"] = rep.degraded;
            return d;
        },
        py::arg("model"), py::arg("payoff"), py::arg("T"), py::arg("x"), py::arg("method") = "auto",
        py::arg("tolerance") = 1e-15, py::arg("dual_run") = false, py::arg("block") = py::none(),
        py::arg("M0") = 9, py::arg("threads") = 1,
        "Prices at the spots x; returns a dict of per-spot columns and run metadata.");

    m.def(
        "price_curve",
        [](const LevyModel& model, const PayoffSpec& payoff, double T, int points, bool normalize,
           const std::string& method, unsigned threads) {
            PriceRequest r = make_request(model, payoff, T, interior_grid(payoff.h_minus, payoff.h_plus, points),
                                          method, 1e-15, false, std::nullopt, 9, threads);
            std::vector<CurvePoint> pts;
            {
                py::gil_scoped_release release;
                pts = price_curve(r, normalize);
            }
            py::dict d;
            std::vector<double> x, v, n;
            for (const CurvePoint& p : pts) {
                x.push_back(p.x);
                v.push_back(p.value);
                n.push_back(p.normalized);
            }
            d["x"] = x;
            d["value"] = v;
            if (normalize)
                d["normalized"] = n;
            return d;
        },
        py::arg("model"), py::arg("payoff"), py::arg("T"), py::arg("points"), py::arg("normalize") = false,
        py::arg("method") = "auto", py::arg("threads") = 1);

    m.def("euro_digital", &euro_digital, py::arg("model"), py::arg("a"), py::arg("T"), py::arg("x"),
          py::arg("eps") = 1e-15);
    m.def("euro_call", &euro_call, py::arg("model"), py::arg("a"), py::arg("T"), py::arg("x"),
          py::arg("eps") = 1e-15);

    m.def("reference_table", [](const std::string& name) {
        const ReferenceTable& t = reference_table(name);
        py::dict d;
        d["name"] = t.name;
        d["description"] = t.description;
        d["nu"] = t.nu;
        d["kind"] = payoff_name(t.kind);
        d["a"] = t.a;
        d["x"] = std::vector<double>(t.xs.begin(), t.xs.end());
        py::list rows;
        for (const ReferenceRow& r : t.rows)
            rows.append(py::make_tuple(r.T, std::vector<double>(r.values.begin(), r.values.end())));
        d["rows"] = rows;
        return d;
    }, py::arg("name"));
    m.def("reference_model", &reference_model, py::arg("nu"),
          "KoBoL model of the built-in tables: m2 = 0.1, lambda_+ = 1, lambda_- = -2.");
}
