#include "eigenrestrict/config.hpp"
#include "eigenrestrict/experiment.hpp"
#include "eigenrestrict/geometry.hpp"
#include "eigenrestrict/harmonics.hpp"
#include "eigenrestrict/oscillatory.hpp"
#include "eigenrestrict/restriction.hpp"
#include "eigenrestrict/torus.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace py = pybind11;
namespace er = eigenrestrict;

namespace {

er::Vec to_vec(const std::vector<double>& v) {
    if (v.empty() || v.size() > static_cast<std::size_t>(er::kMaxAmbient)) {
        throw std::invalid_argument("expected between 1 and " + std::to_string(er::kMaxAmbient) + " coordinates");
    }
    er::Vec out = er::Vec::zeros(static_cast<int>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<int>(i)] = v[i];
    return out;
}

er::UnitVector to_unit(const std::vector<double>& v) { return er::UnitVector(to_vec(v)); }

std::vector<double> to_list(const er::Vec& v) { return {v.coords().begin(), v.coords().end()}; }

std::vector<double> sample_ratios(const std::vector<er::NormSample>& s) {
    std::vector<double> out;
    out.reserve(s.size());
    for (const auto& x : s) out.push_back(x.ratio);
    return out;
}

// Config values from Python: bools as true/false, sequences as comma lists, everything else via str().
std::string config_text(const py::handle& value) {
    if (py::isinstance<py::bool_>(value)) return value.cast<bool>() ? "true" : "false";
    if (py::isinstance<py::list>(value) || py::isinstance<py::tuple>(value)) {
        std::string out;
        for (const auto& item : value) out += (out.empty() ? "" : ",") + config_text(item);
        return out;
    }
    return py::str(value).cast<std::string>();
}

er::SweepOptions sweep_options(int curve_points, int ambient_resolution) {
    er::SweepOptions o;
    o.curve_points = curve_points;
    o.ambient_resolution = ambient_resolution;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "C++ core of eigenrestrict";

    py::register_exception<er::ConfigError>(m, "ConfigError", PyExc_ValueError);

    // Geometry
    m.def("sphere_distance", [](const std::vector<double>& x, const std::vector<double>& y) {
        return er::sphere_distance(to_unit(x), to_unit(y));
    }, py::arg("x"), py::arg("y"));
    m.def("exp_map", [](const std::vector<double>& x, const std::vector<double>& v) {
        return to_list(er::exp_map(to_unit(x), to_vec(v)).vec());
    }, py::arg("x"), py::arg("v"));
    m.def("distance_gradient_check", [](const std::vector<double>& base, double r, const std::vector<double>& omega) {
        return er::distance_gradient_check(to_unit(base), r, to_vec(omega));
    }, py::arg("base"), py::arg("r"), py::arg("omega"));

    // Harmonics
    m.def("eigenvalue", &er::eigenvalue, py::arg("d"), py::arg("n"));
    m.def("zonal", [](int d, int n, const std::vector<double>& pole, const std::vector<double>& x) {
        return er::eval_zonal(d, n, to_unit(pole), to_unit(x));
    }, py::arg("d"), py::arg("n"), py::arg("pole"), py::arg("x"));
    m.def("assoc_harmonic", [](int n, int mm, const std::vector<double>& x) {
        return er::eval_assoc_harmonic(n, mm, to_unit(x));
    }, py::arg("n"), py::arg("m"), py::arg("x"));
    m.def("highest_weight", [](int d, int n, const std::vector<double>& x) {
        return er::eval_highest_weight(d, n, to_unit(x));
    }, py::arg("d"), py::arg("n"), py::arg("x"));

    // Restriction sweeps and fits
    py::class_<er::NormSample>(m, "NormSample")
        .def_readonly("n", &er::NormSample::n)
        .def_readonly("lam", &er::NormSample::lambda)
        .def_readonly("p", &er::NormSample::p)
        .def_readonly("restricted_norm", &er::NormSample::restricted_norm)
        .def_readonly("ambient_norm", &er::NormSample::ambient_norm)
        .def_readonly("ratio", &er::NormSample::ratio)
        .def("__repr__", [](const er::NormSample& s) {
            return "NormSample(n=" + std::to_string(s.n) + ", ratio=" + er::format_double(s.ratio) + ")";
        });

    py::class_<er::ExponentFit>(m, "ExponentFit")
        .def_readonly("slope", &er::ExponentFit::slope)
        .def_readonly("intercept", &er::ExponentFit::intercept)
        .def_readonly("residual", &er::ExponentFit::residual)
        .def_readonly("theoretical", &er::ExponentFit::theoretical)
        .def_readonly("tolerance", &er::ExponentFit::tolerance)
        .def_property_readonly("verdict", [](const er::ExponentFit& f) { return er::to_string(f.verdict); });

    m.def("theoretical_exponent", [](int d, int k, double p, bool curved) {
        const auto t = er::theoretical_exponent(d, k, p, curved);
        return py::make_tuple(t.value, t.log_endpoint);
    }, py::arg("d"), py::arg("k"), py::arg("p"), py::arg("curved") = false,
       "Returns (exponent, log_endpoint). Use math.inf for p = infinity.");

    m.def("fit_power_law", [](const std::vector<double>& x, const std::vector<double>& y) {
        const auto f = er::fit_power_law(x, y);
        return py::make_tuple(f.slope, f.intercept, f.residual);
    }, py::arg("x"), py::arg("y"), "Least-squares fit of log y = slope log x + intercept; returns (slope, intercept, rms).");

    m.def("fit_exponent", [](const std::vector<er::NormSample>& samples, double theoretical,
                             std::optional<double> tolerance, bool log_endpoint) {
        return er::fit_exponent(samples, theoretical, tolerance, log_endpoint);
    }, py::arg("samples"), py::arg("theoretical"), py::arg("tolerance") = py::none(), py::arg("log_endpoint") = false);

    m.def("geometric_degrees", &er::geometric_degrees, py::arg("lo"), py::arg("hi"));

    m.def("restriction_sweep", [](const std::string& family, const std::string& curve, double p,
                                  const std::vector<int>& degrees, std::optional<double> delta, int curve_points,
                                  int ambient_resolution) {
        const auto c = er::parse_curve(curve);
        const auto tmpl = er::named_family(family, c, delta);
        py::gil_scoped_release release;
        return er::sweep(tmpl, c, p, degrees, sweep_options(curve_points, ambient_resolution));
    }, py::arg("family"), py::arg("curve"), py::arg("p"), py::arg("degrees"), py::arg("delta") = py::none(),
       py::arg("curve_points") = 0, py::arg("ambient_resolution") = 0);

    m.def("turning_point_sweep", [](double colatitude, const std::vector<int>& degrees) {
        er::TurningPointResult r;
        {
            py::gil_scoped_release release;
            r = er::turning_point_sweep(colatitude, degrees);
        }
        return py::make_tuple(r.samples, r.best_order);
    }, py::arg("colatitude"), py::arg("degrees"), "Returns (samples, maximizing order per degree).");

    m.def("envelope_holds", [](const std::vector<er::NormSample>& samples, double delta, double margin) {
        return er::check_envelope(samples, delta, margin).holds;
    }, py::arg("samples"), py::arg("delta"), py::arg("margin") = 0.02);

    m.def("ratios", &sample_ratios, py::arg("samples"));

    // Oscillatory integrals
    py::class_<er::KernelBoundReport>(m, "KernelBoundReport")
        .def_readonly("lambdas", &er::KernelBoundReport::lambdas)
        .def_readonly("sup_scaled", &er::KernelBoundReport::sup_scaled)
        .def_readonly("ratios", &er::KernelBoundReport::ratios)
        .def_readonly("uniform", &er::KernelBoundReport::uniform);

    m.def("verify_kernel_bound", [](const std::string& curve, const std::vector<double>& lambdas, double r,
                                    double window, int grid) {
        er::KernelSpec spec{er::parse_curve(curve)};
        spec.r = r;
        spec.window = window;
        py::gil_scoped_release release;
        return er::verify_kernel_bound(spec, lambdas, grid);
    }, py::arg("curve"), py::arg("lambdas"), py::arg("r") = 0.4, py::arg("window") = 0.2, py::arg("grid") = 41);

    m.def("phase_expansion_fit", [](const std::string& curve, double tau) {
        return er::phase_expansion_fit(er::parse_curve(curve), tau, er::default_phase_steps());
    }, py::arg("curve"), py::arg("tau") = 0.0);

    py::class_<er::CriticalPoints>(m, "CriticalPoints")
        .def_property_readonly("omega_star", [](const er::CriticalPoints& c) { return to_list(c.omega_star); })
        .def_property_readonly("omega_opposite", [](const er::CriticalPoints& c) { return to_list(c.omega_opposite); })
        .def_readonly("phase_star", &er::CriticalPoints::phase_star)
        .def_readonly("phase_opposite", &er::CriticalPoints::phase_opposite);

    m.def("critical_points", [](const std::vector<double>& x, const std::vector<double>& xp, double r) {
        return er::critical_points(to_unit(x), to_unit(xp), r);
    }, py::arg("x"), py::arg("xp"), py::arg("r"));

    m.def("airy_operator_norm", [](const std::string& which, double lambda, std::optional<double> step) {
        er::AirySpec spec;
        if (which == "model") {
            spec = er::airy_model_case(lambda);
        } else if (which == "variable") {
            spec = er::airy_variable_case(lambda);
        } else {
            throw std::invalid_argument("airy case must be 'model' or 'variable'");
        }
        py::gil_scoped_release release;
        return step ? er::airy_operator_norm(spec, *step) : er::airy_operator_norm(spec);
    }, py::arg("case"), py::arg("lam"), py::arg("step") = py::none());

    // Torus
    m.def("representations", [](long long N) { return er::representations(N).points; }, py::arg("N"));
    m.def("r2", [](long long N) { return er::representations(N).count(); }, py::arg("N"));
    m.def("r2_table", &er::r2_table, py::arg("n_max"));

    m.def("divisor_growth", [](long long n_max) {
        const auto g = er::divisor_growth(n_max);
        py::list records, tails;
        for (const auto& r : g.records) records.append(py::make_tuple(r.N, r.r2, r.exponent));
        for (const auto& t : g.tails) tails.append(py::make_tuple(t.cutoff, t.argmax, t.exponent));
        py::dict out;
        out["records"] = records;
        out["tails"] = tails;
        out["decreasing"] = g.decreasing;
        return out;
    }, py::arg("n_max"));

    m.def("torus_sup_norm", [](long long N, std::uint64_t seed, int M) {
        const auto f = er::random_eigenfunction(N, seed);
        return er::torus_sup_norm(f, M > 0 ? M : er::torus_grid_floor(N)).value;
    }, py::arg("N"), py::arg("seed"), py::arg("M") = 0);

    py::class_<er::TorusReport>(m, "TorusReport")
        .def_property_readonly("rows", [](const er::TorusReport& r) {
            py::list rows;
            for (const auto& x : r.rows) rows.append(py::make_tuple(x.N, x.r2, x.sup, x.curve_l2, x.seed));
            return rows;
        })
        .def_readonly("sup_bound_holds", &er::TorusReport::sup_bound_holds)
        .def_readonly("sup_slope", &er::TorusReport::sup_slope)
        .def_readonly("curve_slope", &er::TorusReport::curve_slope);

    m.def("verify_linfty_bound", [](const std::vector<long long>& Ns, const std::vector<std::uint64_t>& seeds) {
        py::gil_scoped_release release;
        return er::verify_linfty_bound(Ns, seeds);
    }, py::arg("Ns"), py::arg("seeds"));

    // Experiment runner
    py::class_<er::RunOutcome>(m, "RunOutcome")
        .def_readonly("exit_code", &er::RunOutcome::exit_code)
        .def_readonly("verdict", &er::RunOutcome::verdict)
        .def_readonly("files", &er::RunOutcome::files)
        .def_readonly("message", &er::RunOutcome::message);

    m.def("list_experiments", &er::format_catalog);

    m.def("run_experiment", [](const py::dict& settings, const std::filesystem::path& out_dir) {
        er::ExperimentConfig config;
        for (const auto& [key, value] : settings) {
            er::set_config_value(config, py::str(key).cast<std::string>(), config_text(value));
        }
        py::gil_scoped_release release;
        return er::run_experiment(config, out_dir);
    }, py::arg("settings"), py::arg("out_dir"),
       "Runs an experiment from a dict of config keys; lists become comma-separated values.");
}
