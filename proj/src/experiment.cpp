#include "eigenrestrict/experiment.hpp"

#include "eigenrestrict/oscillatory.hpp"
#include "eigenrestrict/plot.hpp"
#include "eigenrestrict/restriction.hpp"
#include "eigenrestrict/torus.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

namespace eigenrestrict {

using Json = nlohmann::ordered_json;

const std::vector<CatalogEntry>& experiment_catalog() {
    static const std::vector<CatalogEntry> entries{
        {"sweep", "Theorems 1-3", "L^p growth of sphere eigenfunction families restricted to curves and great subspheres"},
        {"kernel", "Lemma 3.2", "uniform (1 + lambda|t - tau|)^{-1/2} decay of the oscillatory curve kernel"},
        {"phase", "Lemma 4.5", "cubic distance expansion along a curve, c = curvature^2 / 24"},
        {"airy", "Lemma 4.6", "lambda^{-2/3} operator norm of the Airy-regime kernel"},
        {"torus", "torus divisor bound", "lattice counts r2(N), sup norms and curve norms of torus eigenfunctions"},
        {"oracle-table", "Theorems 1-3", "theoretical restriction exponents with log endpoints"},
    };
    return entries;
}

std::string format_catalog() {
    std::string out;
    for (const auto& e : experiment_catalog()) out += e.name + " → " + e.verifies + ": " + e.description + "\n";
    return out;
}

CurveSpec parse_curve(const std::string& text) {
    if (text == "equator") return CurveSpec::equator();
    if (text == "great-subsphere") return CurveSpec::great_subsphere();
    if (text.rfind("latitude:", 0) == 0) {
        ExperimentConfig scratch;
        set_config_value(scratch, "curve", text);
        return CurveSpec::latitude(std::stod(scratch.curve->substr(9)));
    }
    throw ConfigError("curve", "unknown curve '" + text + "'");
}

namespace {

struct Csv {
    std::string text;
    explicit Csv(const std::string& header) : text(header + "\n") {}
    template <class... Cells>
    void row(const Cells&... cells) {
        std::string line;
        ((line += (line.empty() ? "" : ",") + cell(cells)), ...);
        text += line + "\n";
    }
    static std::string cell(double v) { return format_double(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(long long v) { return std::to_string(v); }
    static std::string cell(std::uint64_t v) { return std::to_string(v); }
    static std::string cell(bool v) { return v ? "true" : "false"; }
    static std::string cell(const std::string& v) { return v; }
};

struct Verdicts {
    Json list = Json::array();
    void add(const std::string& name, Verdict v) { list.push_back({{"name", name}, {"verdict", to_string(v)}}); }
    Verdict overall() const {
        bool pass = false;
        for (const auto& item : list) {
            if (item["verdict"] == "fail") return Verdict::Fail;
            if (item["verdict"] == "pass") pass = true;
        }
        return pass ? Verdict::Pass : Verdict::NoContract;
    }
};

struct Artifacts {
    Csv csv{""};
    Json results = Json::object();
    Verdicts verdicts;
    std::vector<PlotSeries> plot;
    std::string plot_title, x_label, y_label;
    std::optional<Csv> divisor_csv;
};

Json number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

Json fit_json(const ExponentFit& fit, bool log_endpoint) {
    return {{"slope", fit.slope},
            {"intercept", fit.intercept},
            {"residual", fit.residual},
            {"theoretical", fit.theoretical},
            {"tolerance", number(fit.tolerance)},
            {"log_endpoint", log_endpoint},
            {"verdict", to_string(fit.verdict)}};
}

PlotSeries fitted_line(const std::vector<double>& x, double slope, double intercept, const std::string& label) {
    PlotSeries s{label, {}, {}, false};
    if (x.empty()) return s;
    for (double v : {x.front(), x.back()}) {
        s.x.push_back(v);
        s.y.push_back(std::exp(intercept) * std::pow(v, slope));
    }
    return s;
}

bool is_geodesic(const CurveSpec& c) { return c.kind() != CurveKind::LatitudeCircle; }

std::optional<double> default_sweep_tolerance(const std::string& family, const CurveSpec& c, int d, double p) {
    const double p0 = 2.0 * d / (d - 1.0);
    if (family == "highest-weight" && d == 2 && is_geodesic(c) && p < p0) return 0.02;
    if (family == "zonal-on-curve" && is_geodesic(c) && p > p0) return d == 2 ? 0.03 : 0.04;
    if (family == "turning-point") return 0.03;
    return std::nullopt;
}

UnitVector normal_pole(const CurveSpec& c) {
    const auto& frame = c.frame();
    if (c.ambient_dim() == 3) return UnitVector(frame[2]);
    Vec w;
    // Complete the frame of the great 2-sphere to an orthonormal basis of R^4.
    for (int axis = 0; axis < 4; ++axis) {
        w = Vec::basis(4, axis);
        for (const auto& f : frame) w -= dot(w, f) * f;
        if (norm(w) > 0.5) break;
    }
    return UnitVector::normalize(w);
}

}  // namespace

FamilyTemplate named_family(const std::string& name, const CurveSpec& curve, std::optional<double> delta) {
    const int d = curve.ambient_dim() - 1;
    if (name == "highest-weight") return highest_weight_family(d);
    if (name == "zonal-on-curve") {
        const UnitVector pole =
            curve.dimension() == 1 ? curve_point(curve, 0.0) : subsphere_point(curve, std::numbers::pi / 2, 0.0);
        return zonal_family(d, pole);
    }
    if (name == "zonal-off-curve") return zonal_family(d, normal_pole(curve));
    if (name == "averaged") {
        if (!delta) throw std::invalid_argument("averaged family needs delta");
        return averaged_family(*delta);
    }
    throw std::invalid_argument("no family template named '" + name + "'");
}

namespace {

void run_sweep(const ExperimentConfig& cfg, Artifacts& art) {
    const CurveSpec curve = parse_curve(*cfg.curve);
    const int d = curve.ambient_dim() - 1;
    const int k = curve.dimension();
    const double p = *cfg.p;
    const std::string& family = *cfg.family;
    const bool curved = curve.kind() == CurveKind::LatitudeCircle;
    const auto theory = theoretical_exponent(d, k, p, curved);

    SweepOptions options;
    options.curve_points = cfg.curve_points.value_or(0);
    options.ambient_resolution = cfg.ambient_resolution.value_or(0);

    std::vector<NormSample> samples;
    Json extra = Json::object();
    if (family == "turning-point") {
        const auto result = turning_point_sweep(curve.colatitude(), cfg.degrees, options);
        samples = result.samples;
        extra["best_order"] = result.best_order;
    } else {
        samples = sweep(named_family(family, curve, cfg.delta), curve, p, cfg.degrees, options);
    }

    art.csv = Csv("n,lambda,p,restricted_norm,ambient_norm,ratio");
    for (const auto& s : samples) art.csv.row(s.n, s.lambda, s.p, s.restricted_norm, s.ambient_norm, s.ratio);

    std::optional<double> tolerance = cfg.tolerance ? cfg.tolerance : default_sweep_tolerance(family, curve, d, p);
    bool any_zero = false;
    for (const auto& s : samples) any_zero = any_zero || !(s.ratio > 0.0);
    if (any_zero) {
        // The family vanishes identically on the curve for some degree; no power law to fit.
        art.results["fit"] = nullptr;
        art.results["note"] = "restricted norm vanishes for at least one degree";
        art.verdicts.add("slope", tolerance ? Verdict::Fail : Verdict::NoContract);
    } else {
        const ExponentFit fit = fit_exponent(samples, theory.value, tolerance, theory.log_endpoint);
        art.results["fit"] = fit_json(fit, theory.log_endpoint);
        art.verdicts.add("slope", fit.verdict);
        std::vector<double> lambdas;
        for (const auto& s : samples) lambdas.push_back(s.lambda);
        char label[48];
        std::snprintf(label, sizeof label, "fit slope %.4f", fit.slope);
        art.plot.push_back(fitted_line(lambdas, fit.slope, fit.intercept, label));
    }
    const EnvelopeCheck env = check_envelope(samples, theory.value);
    art.results["envelope"] = {{"exponent", env.exponent},
                               {"constant", env.constant},
                               {"worst_excess", env.worst_excess},
                               {"worst_n", samples[env.worst_index].n},
                               {"holds", env.holds}};
    art.verdicts.add("envelope", env.holds ? Verdict::Pass : Verdict::Fail);
    art.results["dimension"] = d;
    art.results["submanifold_dimension"] = k;
    art.results["theoretical"] = {{"value", theory.value}, {"log_endpoint", theory.log_endpoint}};
    for (auto& [key, value] : extra.items()) art.results[key] = value;

    PlotSeries data{family, {}, {}, true};
    for (const auto& s : samples) {
        data.x.push_back(s.lambda);
        data.y.push_back(s.ratio);
    }
    art.plot.insert(art.plot.begin(), data);
    art.plot_title = family + " on " + *cfg.curve + ", p = " + format_double(p);
    art.x_label = "lambda";
    art.y_label = "restricted / ambient norm";
}

void run_kernel(const ExperimentConfig& cfg, Artifacts& art) {
    KernelSpec spec{parse_curve(*cfg.curve)};
    if (cfg.r) spec.r = *cfg.r;
    if (cfg.window) spec.window = *cfg.window;
    validate(spec);
    const auto report = verify_kernel_bound(spec, cfg.lambdas, cfg.grid.value_or(41));
    art.csv = Csv("lambda,sup_scaled");
    for (std::size_t i = 0; i < report.lambdas.size(); ++i) art.csv.row(report.lambdas[i], report.sup_scaled[i]);
    art.results["r"] = spec.r;
    art.results["window"] = spec.window;
    art.results["ratios"] = report.ratios;
    art.results["uniform"] = report.uniform;
    art.verdicts.add("uniform_decay", report.ratios.empty() ? Verdict::NoContract
                                                            : (report.uniform ? Verdict::Pass : Verdict::Fail));
    art.plot.push_back({"sup |K| (1 + lambda|t - tau|)^{1/2}", report.lambdas, report.sup_scaled, true});
    art.plot_title = "kernel decay on " + *cfg.curve;
    art.x_label = "lambda";
    art.y_label = "scaled kernel supremum";
}

void run_phase(const ExperimentConfig& cfg, Artifacts& art) {
    art.csv = Csv("theta0,c_hat,c_theory");
    const auto steps = default_phase_steps();
    Json rows = Json::array();
    bool all_ok = true;
    for (double theta : cfg.colatitudes) {
        const bool great = std::abs(theta - std::numbers::pi / 2) <= 1e-15;
        const CurveSpec c = great ? CurveSpec::equator() : CurveSpec::latitude(theta);
        const double c_hat = phase_expansion_fit(c, 0.0, steps);
        const double cot = great ? 0.0 : std::cos(theta) / std::sin(theta);
        const double c_theory = cot * cot / 24.0;
        const double tol = great ? 1e-8 : 1e-6;
        const bool ok = std::abs(c_hat - c_theory) <= tol;
        all_ok = all_ok && ok;
        art.csv.row(theta, c_hat, c_theory);
        rows.push_back({{"theta0", theta}, {"c_hat", c_hat}, {"c_theory", c_theory}, {"tolerance", tol}, {"ok", ok}});
    }
    art.results["rows"] = rows;
    art.verdicts.add("phase_coefficient", all_ok ? Verdict::Pass : Verdict::Fail);
}

void run_airy(const ExperimentConfig& cfg, Artifacts& art) {
    art.csv = Csv("lambda,opnorm");
    std::vector<double> norms;
    const std::size_t cap = cfg.memory_cap_mib ? static_cast<std::size_t>(*cfg.memory_cap_mib) << 20 : kDefaultMemoryCap;
    for (double lambda : cfg.lambdas) {
        const AirySpec spec = *cfg.airy_case == "model" ? airy_model_case(lambda) : airy_variable_case(lambda);
        const double step = cfg.step ? *cfg.step : 2 * std::numbers::pi / lambda / 20.0;
        norms.push_back(airy_operator_norm(spec, step, cap));
        art.csv.row(lambda, norms.back());
    }
    const PowerLawFit fit = fit_power_law(cfg.lambdas, norms);
    const double tol = cfg.tolerance.value_or(0.05);
    const Verdict v = std::abs(fit.slope + 2.0 / 3.0) <= tol ? Verdict::Pass : Verdict::Fail;
    bool decreasing = true;
    for (std::size_t i = 1; i < norms.size(); ++i) decreasing = decreasing && norms[i] < norms[i - 1];
    art.results["fit"] = {{"slope", fit.slope},
                          {"intercept", fit.intercept},
                          {"residual", fit.residual},
                          {"theoretical", -2.0 / 3.0},
                          {"tolerance", tol},
                          {"verdict", to_string(v)}};
    art.results["monotone_decay"] = decreasing;
    art.verdicts.add("slope", v);
    art.plot.push_back({"operator norm", cfg.lambdas, norms, true});
    art.plot.push_back(fitted_line(cfg.lambdas, fit.slope, fit.intercept, "fit"));
    art.plot_title = "Airy-regime operator norm (" + *cfg.airy_case + " case)";
    art.x_label = "lambda";
    art.y_label = "largest singular value";
}

void run_torus(const ExperimentConfig& cfg, Artifacts& art) {
    art.csv = Csv("N,r2,sup,curve_l2,seed");
    if (!cfg.n_list.empty()) {
        for (long long N : cfg.n_list) {
            if (representations(N).count() == 0) {
                throw ConfigError("n-list", std::to_string(N) + " is not a sum of two squares");
            }
        }
        std::vector<std::uint64_t> seeds;
        for (int i = 0; i < cfg.seed_count.value_or(8); ++i) seeds.push_back(cfg.seed + static_cast<std::uint64_t>(i));
        const auto report = verify_linfty_bound(cfg.n_list, seeds);
        for (const auto& r : report.rows) art.csv.row(r.N, r.r2, r.sup, r.curve_l2, r.seed);
        std::vector<long long> distinct = cfg.n_list;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        const bool slope_contract = distinct.size() >= 4;
        const double limit = cfg.tolerance.value_or(0.15);
        art.results["sup_bound_holds"] = report.sup_bound_holds;
        art.results["sup_slope"] = report.sup_slope;
        art.results["sup_slope_limit"] = limit;
        art.results["curve_l2_slope"] = report.curve_slope;
        art.verdicts.add("sup_bound", report.sup_bound_holds ? Verdict::Pass : Verdict::Fail);
        art.verdicts.add("sup_slope", !slope_contract ? Verdict::NoContract
                                                      : (report.sup_slope <= limit ? Verdict::Pass : Verdict::Fail));

        PlotSeries mean{"mean sup |f|", {}, {}, true};
        for (long long N : cfg.n_list) {
            double sum = 0.0;
            int count = 0;
            for (const auto& r : report.rows) {
                if (r.N == N) {
                    sum += r.sup;
                    ++count;
                }
            }
            mean.x.push_back(std::sqrt(static_cast<double>(N)));
            mean.y.push_back(sum / count);
        }
        art.plot.push_back(mean);
        art.plot_title = "torus eigenfunction sup norms";
        art.x_label = "sqrt(N)";
        art.y_label = "sup |f|";
    }
    if (cfg.n_max) {
        const DivisorGrowth growth = divisor_growth(*cfg.n_max);
        Csv divisor("N,r2,exponent");
        Json tails = Json::array();
        double max_exponent = 0.0;
        for (const auto& row : growth.records) {
            divisor.row(row.N, row.r2, row.exponent);
            if (row.N >= 2) max_exponent = std::max(max_exponent, row.exponent);
        }
        for (const auto& t : growth.tails) tails.push_back({{"cutoff", t.cutoff}, {"argmax", t.argmax}, {"max_exponent", t.exponent}});
        art.results["divisor_growth"] = {{"n_max", growth.n_max},
                                         {"max_r2", growth.records.back().r2},
                                         {"max_r2_at", growth.records.back().N},
                                         {"max_exponent", max_exponent},
                                         {"tail_maxima", tails},
                                         {"decreasing", growth.decreasing}};
        art.verdicts.add("divisor_trend", growth.tails.size() < 2 ? Verdict::NoContract
                                                                  : (growth.decreasing ? Verdict::Pass : Verdict::Fail));
        art.divisor_csv = divisor;
        if (art.plot.empty() && !growth.records.empty()) {
            PlotSeries rec{"record r2(N)", {}, {}, true};
            for (const auto& row : growth.records) {
                rec.x.push_back(static_cast<double>(row.N));
                rec.y.push_back(row.r2);
            }
            art.plot.push_back(rec);
            art.plot_title = "record lattice counts";
            art.x_label = "N";
            art.y_label = "r2(N)";
        }
    }
}

void run_oracle(const ExperimentConfig& cfg, Artifacts& art) {
    const int d = *cfg.d, k = *cfg.k;
    const bool curved = cfg.curved.value_or(false);
    std::vector<double> ps{2.0, 2.0 * d / (d - 1.0), 4.0, 6.0, kInfinity};
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    art.csv = Csv("d,k,p,value,log_endpoint");
    Json table = Json::array();
    for (double p : ps) {
        const auto e = theoretical_exponent(d, k, p, curved);
        art.csv.row(d, k, p, e.value, e.log_endpoint);
        table.push_back({{"p", number(p)}, {"value", e.value}, {"log_endpoint", e.log_endpoint}});
    }
    art.results["d"] = d;
    art.results["k"] = k;
    art.results["curved"] = curved;
    art.results["table"] = table;
    art.verdicts.add("oracle", Verdict::NoContract);
}

void write_file(const std::filesystem::path& path, const std::string& text, std::vector<std::filesystem::path>& files) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    files.push_back(path);
}

Json config_json(const ExperimentConfig& config) {
    Json out = Json::object();
    std::istringstream in(serialize_config(config));
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find(" = ");
        out[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return out;
}

RunOutcome write_failure(const ExperimentConfig& config, const std::filesystem::path& out_dir, int code,
                         const std::string& verdict, const std::string& message, const std::string& field) {
    RunOutcome outcome{code, verdict, {}, message};
    Json summary = Json::object();
    summary["experiment"] = config.experiment ? to_string(*config.experiment) : "";
    summary["config"] = config_json(config);
    summary["verdict"] = verdict;
    summary["error"] = message;
    if (!field.empty()) summary["field"] = field;
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    try {
        write_file(out_dir / "summary.json", summary.dump(2) + "\n", outcome.files);
    } catch (const std::exception&) {
        // Nothing more can be reported if the output directory is unusable.
    }
    return outcome;
}

}  // namespace

RunOutcome report_invalid_config(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                                 const ConfigError& error) {
    return write_failure(config, out_dir, kExitInvalidConfig, "invalid_config", error.what(), error.field());
}

RunOutcome run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
    Artifacts art;
    try {
        validate(config);
        switch (*config.experiment) {
            case ExperimentKind::Sweep: run_sweep(config, art); break;
            case ExperimentKind::Kernel: run_kernel(config, art); break;
            case ExperimentKind::Phase: run_phase(config, art); break;
            case ExperimentKind::Airy: run_airy(config, art); break;
            case ExperimentKind::Torus: run_torus(config, art); break;
            case ExperimentKind::OracleTable: run_oracle(config, art); break;
        }
    } catch (const ConfigError& e) {
        return write_failure(config, out_dir, kExitInvalidConfig, "invalid_config", e.what(), e.field());
    } catch (const std::invalid_argument& e) {
        return write_failure(config, out_dir, kExitInvalidConfig, "invalid_config", e.what(), "");
    } catch (const std::exception& e) {
        return write_failure(config, out_dir, kExitContractFailure, "error", e.what(), "");
    }

    const Verdict overall = art.verdicts.overall();
    RunOutcome outcome{overall == Verdict::Fail ? kExitContractFailure : kExitSuccess, to_string(overall), {}, ""};
    Json summary = Json::object();
    summary["experiment"] = to_string(*config.experiment);
    summary["config"] = config_json(config);
    summary["results"] = art.results;
    summary["verdicts"] = art.verdicts.list;
    summary["verdict"] = to_string(overall);

    try {
        std::filesystem::create_directories(out_dir);
        write_file(out_dir / "results.csv", art.csv.text, outcome.files);
        if (art.divisor_csv) write_file(out_dir / "divisor.csv", art.divisor_csv->text, outcome.files);
        if (config.plot) {
            if (art.plot.empty()) {
                summary["plot"] = nullptr;
            } else {
                write_file(out_dir / "plot.svg", render_loglog_svg(art.plot_title, art.x_label, art.y_label, art.plot),
                           outcome.files);
                summary["plot"] = "plot.svg";
            }
        }
        write_file(out_dir / "summary.json", summary.dump(2) + "\n", outcome.files);
    } catch (const std::exception& e) {
        outcome.exit_code = kExitContractFailure;
        outcome.verdict = "error";
        outcome.message = e.what();
    }
    return outcome;
}

}  // namespace eigenrestrict
