// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

#include "eigenrestrict/geometry.hpp"
#include "eigenrestrict/oscillatory.hpp"
#include "eigenrestrict/restriction.hpp"
#include "eigenrestrict/torus.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace eigenrestrict;
using std::numbers::pi;

namespace {

class Stopwatch {
public:
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct Report {
    int failures = 0;
    void line(int id, const std::string& name, bool ok, const std::string& detail) {
        std::printf("%s  %2d  %-28s %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

// Runs a criterion body and turns an escaping exception into a FAIL line.
void guarded(Report& report, int id, const std::string& name, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report.line(id, name, false, std::string("exception: ") + e.what());
    }
}

struct SweepRun {
    std::vector<NormSample> samples;
    double seconds;
};

SweepRun timed_sweep(const FamilyTemplate& family, const CurveSpec& c, double p, const std::vector<int>& degrees) {
    Stopwatch w;
    auto samples = sweep(family, c, p, degrees);
    return {std::move(samples), w.seconds()};
}

double slope_of(const std::vector<NormSample>& s) { return fit_exponent(s, 0.0, std::nullopt).slope; }

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }

}  // namespace

int main() {
    Report report;
    const auto eq = CurveSpec::equator();
    const auto lat = CurveSpec::latitude(pi / 4);
    const auto degrees = geometric_degrees(16, 256);
    const std::vector<int> even_degrees{16, 22, 32, 46, 64, 90, 128, 182, 256};
    const double inf = kInfinity;

    // Envelope matrix entries, collected along the way: (label, samples, delta).
    struct EnvelopeCase {
        std::string label;
        std::vector<NormSample> samples;
        double delta;
    };
    std::vector<EnvelopeCase> envelope_cases;

    guarded(report, 1, "geodesic sharpness", [&] {
        const auto run = timed_sweep(highest_weight_family(2), eq, 2.0, degrees);
        const double s = slope_of(run.samples);
        const bool ok = within(s, 0.25, 0.02) && run.seconds < 60;
        report.line(1, "geodesic sharpness", ok,
                    fmt("highest-weight/equator/p=2 n=16..256: slope %.4f (0.25 +- 0.02), %.1f s (< 60 s)", s, run.seconds));
    });

    guarded(report, 2, "zonal sharpness", [&] {
        Stopwatch w;
        const auto pole = curve_point(eq, 0.0);
        const auto a = timed_sweep(zonal_family(2, pole), eq, inf, degrees);
        const auto b = timed_sweep(zonal_family(2, pole), eq, 6.0, degrees);
        const double sa = slope_of(a.samples), sb = slope_of(b.samples);
        const double t = w.seconds();
        const bool ok = within(sa, 0.5, 0.03) && within(sb, 1.0 / 3.0, 0.03) && t < 120;
        report.line(2, "zonal sharpness", ok,
                    fmt("zonal-on-curve/equator n=16..256: p=inf slope %.4f (0.5 +- 0.03), p=6 slope %.4f (0.3333 +- 0.03), "
                        "%.1f s (< 120 s)",
                        sa, sb, t));
    });

    guarded(report, 3, "curved-curve improvement", [&] {
        Stopwatch w;
        const auto r = turning_point_sweep(pi / 4, geometric_degrees(32, 512));
        const double s = slope_of(r.samples);
        const double t = w.seconds();
        report.line(3, "curved-curve improvement", within(s, 1.0 / 6.0, 0.03) && t < 600,
                    fmt("turning-point latitude pi/4 p=2 n=32..512: slope %.4f (0.1667 +- 0.03), %.1f s (< 600 s)", s, t));
        envelope_cases.push_back({"turning-point/latitude/2", r.samples, theoretical_exponent(2, 1, 2.0, true).value});
    });

    guarded(report, 12, "S^3 hypersurface", [&] {
        // Reported out of order so its samples join the envelope matrix.
        const auto c = CurveSpec::great_subsphere();
        const auto pole = subsphere_point(c, pi / 2, 0.0);
        const auto theory = theoretical_exponent(3, 2, 4.0);
        const auto run = timed_sweep(zonal_family(3, pole), c, 4.0, geometric_degrees(8, 128));
        const double s = slope_of(run.samples);
        report.line(12, "S^3 hypersurface", within(s, theory.value, 0.04) && run.seconds < 600,
                    fmt("zonal-on-subsphere d=3 k=2 p=4 n=8..128: slope %.4f (%.4f +- 0.04), %.1f s (< 600 s)", s,
                        theory.value, run.seconds));
        envelope_cases.push_back({"zonal-on-subsphere/S3/4", run.samples, theory.value});
    });

    guarded(report, 4, "upper-bound envelope", [&] {
        Stopwatch w;
        struct Family {
            std::string name;
            std::function<FamilyTemplate(const CurveSpec&)> make;
            bool even_only;
        };
        const std::vector<Family> families{
            {"highest-weight", [](const CurveSpec&) { return highest_weight_family(2); }, false},
            {"zonal-on-curve", [](const CurveSpec& c) { return zonal_family(2, curve_point(c, 0.0)); }, false},
            {"zonal-off-curve", [](const CurveSpec&) { return zonal_family(2, UnitVector{0, 0, 1}); }, true},
            {"averaged", [](const CurveSpec&) { return averaged_family(0.5); }, false},
        };
        for (const auto& f : families) {
            for (const auto& [cname, curve] : {std::pair{"equator", eq}, {"latitude", lat}}) {
                const bool curved = curve.kind() == CurveKind::LatitudeCircle;
                for (double p : {2.0, 4.0, 6.0, inf}) {
                    const auto samples = sweep(f.make(curve), curve, p, f.even_only ? even_degrees : degrees);
                    envelope_cases.push_back({fmt("%s/%s/%g", f.name.c_str(), cname, p), samples,
                                              theoretical_exponent(2, 1, p, curved).value});
                }
            }
        }
        int held = 0;
        double worst = 0.0;
        std::string worst_label;
        for (const auto& c : envelope_cases) {
            const auto e = check_envelope(c.samples, c.delta, 0.02);
            if (e.holds) ++held;
            if (e.worst_excess > worst) {
                worst = e.worst_excess;
                worst_label = c.label;
            }
        }
        const int total = static_cast<int>(envelope_cases.size());
        report.line(4, "upper-bound envelope", held == total,
                    fmt("%d/%d sweeps under C*lambda^(delta+0.02); worst sample/envelope %.4f (%s), %.1f s", held, total,
                        worst, worst_label.c_str(), w.seconds()));
    });

    guarded(report, 5, "phase expansion", [&] {
        Stopwatch w;
        const auto steps = default_phase_steps();
        double worst_curved = 0.0, worst_flat = 0.0;
        for (double theta0 : {pi / 4, pi / 3}) {
            const double c = phase_expansion_fit(CurveSpec::latitude(theta0), 0.0, steps);
            const double cot = 1.0 / std::tan(theta0);
            worst_curved = std::max(worst_curved, std::abs(c - cot * cot / 24.0));
        }
        const auto tilted = CurveSpec::great_circle(UnitVector::normalize(Vec{1, 1, 1}), std::sqrt(0.5) * Vec{1, -1, 0});
        for (const auto& g : {eq, tilted}) worst_flat = std::max(worst_flat, std::abs(phase_expansion_fit(g, 0.3, steps)));
        const double t = w.seconds();
        report.line(5, "phase expansion", worst_curved < 1e-6 && worst_flat < 1e-8 && t < 1.0,
                    fmt("latitude pi/4, pi/3: max |c - cot^2/24| %.2e (< 1e-6); great circles max |c| %.2e (< 1e-8); "
                        "%.3f s (< 1 s)",
                        worst_curved, worst_flat, t));
    });

    guarded(report, 6, "kernel decay", [&] {
        Stopwatch w;
        const std::vector<double> lambdas{50, 100, 200, 400};
        std::string detail;
        bool ok = true;
        for (const auto& [name, curve] : {std::pair{"equator", eq}, {"latitude pi/4", lat}}) {
            KernelSpec spec{curve};
            const auto r = verify_kernel_bound(spec, lambdas);
            ok = ok && r.uniform;
            detail += fmt("%s ratios", name);
            for (double x : r.ratios) detail += fmt(" %.4f", x);
            detail += "; ";
        }
        const double t = w.seconds();
        report.line(6, "kernel decay", ok && t < 300, detail + fmt("all in [0.5, 1.5], %.1f s (< 300 s)", t));
    });

    guarded(report, 7, "critical-point structure", [&] {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> radius(0.1, 1.2), frac(0.05, 0.95);
        double worst_angle = 0.0, worst_phase = 0.0;
        for (int i = 0; i < 100; ++i) {
            const auto xp = testing::random_point(rng);
            const double r = radius(rng);
            const auto x = exp_map(xp, frac(rng) * r * testing::random_tangent(rng, xp));
            const auto basis = tangent_basis(xp);
            auto dir = [&](double w) { return std::cos(w) * basis[0] + std::sin(w) * basis[1]; };
            const auto cp = critical_points(x, xp, r);
            const auto e = oracle::scan_angle([&](double w) { return phase_difference(x, xp, r, dir(w)); }, 100000);
            auto angle = [](const Vec& a, const Vec& b) { return 2.0 * std::atan2(norm(a - b), norm(a + b)); };
            worst_angle = std::max({worst_angle, angle(dir(e.argmax), cp.omega_star), angle(dir(e.argmin), cp.omega_opposite)});
            const double d = sphere_distance(x, xp);
            worst_phase = std::max({worst_phase, std::abs(cp.phase_star - d), std::abs(cp.phase_opposite + d)});
        }
        report.line(7, "critical-point structure", worst_angle < 1e-4 && worst_phase < 1e-10,
                    fmt("100 configurations: max extremum offset %.2e rad (< 1e-4), max |phase -+ d| %.2e (< 1e-10)",
                        worst_angle, worst_phase));
    });

    guarded(report, 8, "Airy bound", [&] {
        Stopwatch w;
        const std::vector<double> lambdas{200, 400, 800};
        std::vector<double> slopes;
        for (auto make : {airy_model_case, airy_variable_case}) {
            std::vector<double> norms;
            for (double l : lambdas) norms.push_back(airy_operator_norm(make(l)));
            slopes.push_back(fit_power_law(lambdas, norms).slope);
        }
        const double t = w.seconds();
        const bool ok = within(slopes[0], -2.0 / 3.0, 0.05) && within(slopes[1], -2.0 / 3.0, 0.05) && t < 600;
        report.line(8, "Airy bound", ok,
                    fmt("lambda 200..800: model slope %.4f, variable slope %.4f (-0.6667 +- 0.05), %.1f s (< 600 s)",
                        slopes[0], slopes[1], t));
    });

    guarded(report, 9, "gradient identity", [&] {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> radius(0.05, pi - 0.05);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const auto base = testing::random_point(rng);
            worst = std::max(worst, distance_gradient_check(base, radius(rng), testing::random_tangent(rng, base)));
        }
        report.line(9, "gradient identity", worst < 1e-6, fmt("100 configurations: max deviation %.2e (< 1e-6)", worst));
    });

    guarded(report, 10, "torus", [&] {
        Stopwatch w;
        const long long n_max = 100000;
        const auto table = r2_table(n_max);
        long long mismatches = 0;
        for (long long N = 0; N <= n_max; ++N) {
            if (static_cast<long long>(representations(N).count()) != table[static_cast<std::size_t>(N)]) ++mismatches;
        }

        int checked = 0, violations = 0;
        const std::vector<long long> small{5, 25, 65, 85, 325};
        for (std::uint64_t seed = 1; checked < 1000; ++seed) {
            for (long long N : small) {
                const auto f = random_eigenfunction(N, seed);
                const double sup = torus_sup_norm(f, torus_grid_floor(N)).value;
                if (sup > std::sqrt(static_cast<double>(representations(N).count())) * (1 + 1e-14)) ++violations;
                ++checked;
            }
        }

        const std::vector<long long> ladder{25, 169, 625, 4225, 34225};
        std::vector<std::uint64_t> seeds;
        for (std::uint64_t s = 1; s <= 8; ++s) seeds.push_back(s);
        const auto rep = verify_linfty_bound(ladder, seeds);
        const double t = w.seconds();
        const bool ok = mismatches == 0 && violations == 0 && rep.sup_bound_holds && rep.sup_slope <= 0.15 && t < 300;
        report.line(10, "torus", ok,
                    fmt("r2 table vs per-N scan N<=1e5: %lld mismatches; sup<=sqrt(r2) violations %d/%d; "
                        "sup slope %.4f (<= 0.15) over N=5^2..185^2 x 8 seeds; %.1f s (< 300 s)",
                        mismatches, violations, checked, rep.sup_slope, t));
    });

    guarded(report, 11, "oracle table", [&] {
        int rows = 0, mismatches = 0;
        for (int d = 2; d <= 5; ++d) {
            for (int k = 1; k <= d - 1; ++k) {
                for (bool curved : {false, true}) {
                    if (curved && !(d == 2 && k == 1)) continue;
                    for (double p : {2.0, 2.0 * d / (d - 1.0), 4.0, 6.0, inf}) {
                        const auto got = theoretical_exponent(d, k, p, curved);
                        const auto want = oracle::restriction_exponent(d, k, p, curved);
                        const bool flag = (k == d - 1 && p == 2.0 * d / (d - 1.0)) || (k == d - 2 && p == 2.0);
                        ++rows;
                        if (std::abs(got.value - want.value) > 1e-14 || got.log_endpoint != want.log_endpoint ||
                            got.log_endpoint != flag) {
                            ++mismatches;
                        }
                    }
                }
            }
        }
        report.line(11, "oracle table", mismatches == 0,
                    fmt("%d (d, k, p, curved) rows for d=2..5, p in {2, 2d/(d-1), 4, 6, inf}: %d mismatches", rows,
                        mismatches));
    });

    std::printf("%s: %d criteria failed\n", report.failures == 0 ? "ALL PASS" : "FAILURES", report.failures);
    return report.failures == 0 ? 0 : 1;
}
