#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cpig/bounds.hpp"
#include "cpig/divergence.hpp"
#include "cpig/error.hpp"
#include "cpig/estimation.hpp"
#include "cpig/io.hpp"
#include "cpig/measures.hpp"
#include "cpig/orders.hpp"
#include "cpig/validation.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

cpig::EvalOptions opts(double tol, bool force) {
    cpig::EvalOptions o;
    o.tol = tol;
    o.force_quadrature = force;
    return o;
}

cpig::Side side_of(const std::string& s) {
    if (s == "past") return cpig::Side::Past;
    if (s == "residual") return cpig::Side::Residual;
    throw py::value_error("side must be 'past' or 'residual'");
}

std::vector<cpig::Theta> thetas_of(const std::vector<double>& v) {
    std::vector<cpig::Theta> out;
    for (double t : v) out.emplace_back(t);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cumulative past information generating function and related measures";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result([&] { return py::object(py::exception<cpig::Error>(m, "CpigError")); });
    // The exception carries the error kind name, e.g. err.kind == "Divergent".
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const cpig::Error& e) {
            const py::object& type = error_type.get_stored();
            py::object exc = type(e.what());
            exc.attr("kind") = std::string(cpig::to_string(e.kind()));
            PyErr_SetObject(type.ptr(), exc.ptr());
        }
    });

    py::class_<cpig::DistributionSpec>(m, "Distribution")
        .def_static("uniform", &cpig::DistributionSpec::uniform, "a"_a, "b"_a)
        .def_static("exponential", &cpig::DistributionSpec::exponential, "rate"_a)
        .def_static("power", &cpig::DistributionSpec::power, "exponent"_a)
        .def_static(
            "mixture",
            [](std::vector<cpig::DistributionSpec> comps, std::vector<double> w) {
                return cpig::DistributionSpec::mixture(std::move(comps), cpig::MixWeights(std::move(w)));
            },
            "components"_a, "weights"_a)
        .def_static(
            "piecewise",
            [](const std::vector<std::pair<double, double>>& knots) { return cpig::make_piecewise_cdf(knots); },
            "knots"_a)
        .def_static(
            "empirical", [](const std::vector<double>& s) { return cpig::empirical_cdf_spec(s); }, "sample"_a)
        .def_static(
            "parse", [](const std::string& text) { return cpig::io::parse_dist_spec(text); }, "text"_a)
        .def("cdf", &cpig::DistributionSpec::cdf, "x"_a)
        .def("survival", &cpig::DistributionSpec::survival, "x"_a)
        .def("pdf", &cpig::DistributionSpec::pdf, "x"_a)
        .def("quantile", &cpig::DistributionSpec::quantile, "p"_a)
        .def("support",
             [](const cpig::DistributionSpec& f) {
                 const auto s = f.support();
                 return py::make_tuple(s.lower, s.upper);
             })
        .def("shift", [](const cpig::DistributionSpec& f, double c) { return cpig::shift_location(f, c); }, "c"_a)
        .def("sample", [](const cpig::DistributionSpec& f, std::size_t n, std::uint64_t seed) {
            return cpig::sample(f, n, seed);
        }, "n"_a, "seed"_a)
        .def("describe", &cpig::DistributionSpec::describe)
        .def("__repr__", [](const cpig::DistributionSpec& f) { return "Distribution(" + f.describe() + ")"; })
        .def(py::self == py::self);

    py::class_<cpig::MeasureResult>(m, "MeasureResult")
        .def_readonly("value", &cpig::MeasureResult::value)
        .def_readonly("abs_err", &cpig::MeasureResult::abs_err)
        .def_property_readonly("method", [](const cpig::MeasureResult& r) { return std::string(cpig::to_string(r.method)); })
        .def_readonly("warnings", &cpig::MeasureResult::warnings)
        .def("__float__", [](const cpig::MeasureResult& r) { return r.value; })
        .def("__repr__", [](const cpig::MeasureResult& r) {
            return "MeasureResult(value=" + py::repr(py::float_(r.value)).cast<std::string>() +
                   ", abs_err=" + py::repr(py::float_(r.abs_err)).cast<std::string>() + ", method='" +
                   std::string(cpig::to_string(r.method)) + "')";
        });

    const auto tol = "tol"_a = cpig::kDefaultTol;
    const auto force = "force_quadrature"_a = false;

    m.def("cpig", [](const cpig::DistributionSpec& f, double t, double tl, bool fq) {
        return cpig::cpig(f, cpig::Theta(t), opts(tl, fq));
    }, "dist"_a, "theta"_a, tol, force);
    m.def("crig", [](const cpig::DistributionSpec& f, double t, double tl, bool fq) {
        return cpig::crig(f, cpig::Theta(t), opts(tl, fq));
    }, "dist"_a, "theta"_a, tol, force);
    m.def("rcpig", [](const cpig::DistributionSpec& f, const cpig::DistributionSpec& g, double t, double tl, bool fq) {
        return cpig::rcpig(f, g, cpig::Theta(t), opts(tl, fq));
    }, "dist"_a, "other"_a, "theta"_a, tol, force);
    m.def("cigf", [](const cpig::DistributionSpec& f, double a, double b, double tl, bool fq) {
        return cpig::cigf(f, a, b, opts(tl, fq));
    }, "dist"_a, "alpha"_a, "beta"_a, tol, force);
    m.def("gcpe", [](const cpig::DistributionSpec& f, int n, double tl, bool fq) {
        return cpig::gcpe(f, n, opts(tl, fq));
    }, "dist"_a, "n"_a, tol, force);
    m.def("gcre", [](const cpig::DistributionSpec& f, int n, double tl, bool fq) {
        return cpig::gcre(f, n, opts(tl, fq));
    }, "dist"_a, "n"_a, tol, force);
    m.def("cumulative_extropy", [](const cpig::DistributionSpec& f, const std::string& side, double tl, bool fq) {
        return cpig::cumulative_extropy(f, side_of(side), opts(tl, fq));
    }, "dist"_a, "side"_a = "past", tol, force);
    m.def("gmd", [](const cpig::DistributionSpec& f, double tl, bool fq) { return cpig::gmd(f, opts(tl, fq)); },
          "dist"_a, tol, force);
    m.def("shannon_entropy", [](const cpig::DistributionSpec& f, double tl) {
        return cpig::shannon_entropy(f, opts(tl, false));
    }, "dist"_a, tol);
    m.def("cpig_series_partial", [](const cpig::DistributionSpec& f, double t, int terms) {
        return cpig::cpig_series_partial(f, cpig::Theta(t), terms);
    }, "dist"_a, "theta"_a, "terms"_a);
    m.def("cpig_theta_derivative", [](const cpig::DistributionSpec& f, double t0, int order, double h) {
        return cpig::cpig_theta_derivative(f, t0, order, h);
    }, "dist"_a, "theta0"_a, "order"_a, "h"_a = 0.0);
    m.def("cpig_order_statistic", [](const cpig::DistributionSpec& f, int n, double t) {
        return cpig::cpig_order_statistic(f, n, cpig::Theta(t));
    }, "dist"_a, "n"_a, "theta"_a);
    m.def("order_stat_mean", [](const cpig::DistributionSpec& f, int n) { return cpig::order_stat_mean(f, n); },
          "dist"_a, "n"_a);

    py::class_<cpig::OrderReport>(m, "OrderReport")
        .def_readonly("holds", &cpig::OrderReport::holds)
        .def_readonly("checked_points", &cpig::OrderReport::checked_points)
        .def_property_readonly("witness", [](const cpig::OrderReport& r) -> py::object {
            if (!r.witness) return py::none();
            return py::make_tuple(r.witness->at, r.witness->lhs, r.witness->rhs);
        });
    m.def("dispersive_order_check", &cpig::dispersive_order_check, "f"_a, "g"_a,
          "grid_size"_a = cpig::kDefaultOrderGrid);
    m.def("stochastic_order_check", &cpig::stochastic_order_check, "f"_a, "g"_a,
          "grid_size"_a = cpig::kDefaultOrderGrid);
    m.def("cpig_order_check", [](const cpig::DistributionSpec& f, const cpig::DistributionSpec& g,
                                 const std::vector<double>& ts) {
        return cpig::cpig_order_check(f, g, thetas_of(ts));
    }, "f"_a, "g"_a, "thetas"_a);
    m.def("convolve_cdfs", &cpig::convolve_cdfs, "f"_a, "g"_a, "grid_size"_a = cpig::kDefaultConvolutionGrid);

    py::class_<cpig::BoundReport>(m, "BoundReport")
        .def_readonly("name", &cpig::BoundReport::name)
        .def_readonly("lhs", &cpig::BoundReport::lhs)
        .def_readonly("rhs", &cpig::BoundReport::rhs)
        .def_property_readonly("relation", [](const cpig::BoundReport& r) {
            return r.relation == cpig::Relation::GreaterEqual ? ">=" : "<=";
        })
        .def_readonly("applicable", &cpig::BoundReport::applicable)
        .def_readonly("holds", &cpig::BoundReport::holds)
        .def_readonly("slack", &cpig::BoundReport::slack)
        .def_readonly("note", &cpig::BoundReport::note);
    m.def("bound_suite", [](const cpig::DistributionSpec& f, double t) { return cpig::bound_suite(f, cpig::Theta(t)); },
          "dist"_a, "theta"_a);
    m.def("convolution_bound_report", [](const cpig::DistributionSpec& f, const cpig::DistributionSpec& g, double t) {
        return cpig::convolution_bound_report(f, g, cpig::Theta(t));
    }, "f"_a, "g"_a, "theta"_a);

    m.def("empirical_cpig", [](const std::vector<double>& s, double t) {
        return cpig::empirical_cpig(s, cpig::Theta(t));
    }, "sample"_a, "theta"_a);
    auto moments_dict = [](const cpig::EstimatorMoments& e) {
        return py::dict("mean"_a = e.mean, "variance_paper"_a = e.variance_paper,
                        "variance_corrected"_a = e.variance_corrected, "n"_a = e.n, "theta"_a = e.theta,
                        "caveat"_a = e.caveat);
    };
    m.def("estimator_moments_exponential", [moments_dict](std::size_t n, double rate, double t) {
        return moments_dict(cpig::estimator_moments_exponential(n, rate, cpig::Theta(t)));
    }, "n"_a, "rate"_a, "theta"_a);
    m.def("estimator_moments_uniform", [moments_dict](std::size_t n, double t) {
        return moments_dict(cpig::estimator_moments_uniform(n, cpig::Theta(t)));
    }, "n"_a, "theta"_a);
    m.def("simulate_estimator", [](const cpig::DistributionSpec& f, std::size_t n, double t, std::size_t reps,
                                   std::uint64_t seed) {
        const auto s = cpig::simulate_estimator(f, n, cpig::Theta(t), reps, seed);
        return py::dict("mean"_a = s.mean, "mean_se"_a = s.mean_se, "variance"_a = s.variance,
                        "variance_se"_a = s.variance_se, "replicates"_a = s.replicates, "seed"_a = s.seed);
    }, "dist"_a, "n"_a, "theta"_a, "replicates"_a, "seed"_a);
    m.def("clt_experiment", [](const cpig::DistributionSpec& f, std::size_t n, double t, std::size_t reps,
                               std::uint64_t seed) {
        const auto r = cpig::clt_experiment(f, n, cpig::Theta(t), reps, seed);
        return py::dict("replicates"_a = r.replicates, "ks_distance"_a = r.ks_distance,
                        "standardized_mean"_a = r.standardized_mean,
                        "standardized_variance"_a = r.standardized_variance, "seed"_a = r.seed);
    }, "dist"_a, "n"_a, "theta"_a, "replicates"_a, "seed"_a);

    m.def("generalized_log", &cpig::generalized_log, "z"_a, "q"_a);
    m.def("cpig_divergence", [](const cpig::DistributionSpec& f, const cpig::DistributionSpec& g, double t, double tl) {
        return cpig::cpig_divergence(f, g, cpig::Theta(t), opts(tl, false));
    }, "f"_a, "g"_a, "theta"_a, tol);
    m.def("jcpig", [](const std::vector<cpig::DistributionSpec>& c, std::vector<double> w, double t) {
        return cpig::jcpig(c, cpig::MixWeights(std::move(w)), cpig::Theta(t));
    }, "components"_a, "weights"_a, "theta"_a);
    m.def("jcpig_mixture_decomposition", [](const std::vector<cpig::DistributionSpec>& c, std::vector<double> w,
                                            double t) {
        const auto r = cpig::jcpig_mixture_decomposition(c, cpig::MixWeights(std::move(w)), cpig::Theta(t));
        return py::make_tuple(r.jcpig_value, r.weighted_divergence_sum);
    }, "components"_a, "weights"_a, "theta"_a);
    m.def("fcpe", [](const cpig::DistributionSpec& f, double q) { return cpig::fcpe(f, q); }, "dist"_a, "q"_a);
    m.def("jfcpe", [](const std::vector<cpig::DistributionSpec>& c, std::vector<double> w, double q) {
        return cpig::jfcpe(c, cpig::MixWeights(std::move(w)), q);
    }, "components"_a, "weights"_a, "q"_a);
    m.def("cpte", [](const cpig::DistributionSpec& f, double q) { return cpig::cpte(f, q); }, "dist"_a, "q"_a);
    m.def("jcpte", [](const std::vector<cpig::DistributionSpec>& c, std::vector<double> w, double q) {
        return cpig::jcpte(c, cpig::MixWeights(std::move(w)), q);
    }, "components"_a, "weights"_a, "q"_a);

    m.def("run_validation", [](std::uint64_t seed) {
        py::list out;
        for (const auto& c : cpig::run_validation(seed))
            out.append(py::dict("id"_a = c.id, "claim"_a = c.claim, "status"_a = std::string(cpig::to_string(c.status)),
                                "detail"_a = c.detail));
        return out;
    }, "seed"_a = 1);
}
