#include "eigenrestrict/restriction.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace eigenrestrict;
using std::numbers::pi;

namespace {

std::vector<NormSample> synthetic(const std::vector<double>& lambdas, double prefactor, double exponent) {
    std::vector<NormSample> out;
    int n = 1;
    for (double l : lambdas) out.push_back({n++, l, 2.0, 0.0, 1.0, prefactor * std::pow(l, exponent)});
    return out;
}

std::vector<double> ratios(const std::vector<NormSample>& s) {
    std::vector<double> r;
    for (const auto& x : s) r.push_back(x.ratio);
    return r;
}

}  // namespace

TEST_SUITE("restriction") {

TEST_CASE("curve norms of closed-form functions") {
    const auto eq = CurveSpec::equator();
    const SphereEigenfunction constant{[](const UnitVector&) { return Complex(std::sqrt(1 / (4 * pi))); }, 0.0, 0, 2};
    CHECK(lp_norm_on_curve(constant, eq, 2.0, 4096) == doctest::Approx(0.70710678118654757).epsilon(1e-14));

    // c_1^2 * 2 pi with c_1^2 = 3 / (8 pi) from the Beta-integral oracle.
    CHECK(2 * pi / oracle::highest_weight_mass(1) == doctest::Approx(0.75).epsilon(1e-14));
    const auto e1 = make_eigenfunction(HighestWeight{2, 1});
    CHECK(lp_norm_on_curve(e1, eq, 2.0, 4096) == doctest::Approx(0.8660254037844386).epsilon(1e-14));

    for (int n : {3, 50, 300}) {
        const auto en = make_eigenfunction(HighestWeight{2, n});
        CHECK(lp_norm_on_curve(en, eq, kInfinity, curve_grid_floor(en.lambda)) ==
              doctest::Approx(std::exp(highest_weight_log_norm(2, n))).epsilon(1e-13));
    }
}

TEST_CASE("curve norms reject bad inputs") {
    const auto f = make_eigenfunction(HighestWeight{2, 10});
    const auto eq = CurveSpec::equator();
    CHECK_THROWS_AS(lp_norm_on_curve(f, eq, 1.5, 4096), std::invalid_argument);
    CHECK_THROWS_AS(lp_norm_on_curve(f, eq, 2.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(lp_norm_on_curve(f, CurveSpec::great_subsphere(), 2.0, 4096), std::invalid_argument);
}

TEST_CASE("grid doubling leaves curve norms unchanged above the floor") {
    const auto c = CurveSpec::latitude(1.0);
    for (double p : {2.0, 6.0, kInfinity}) {
        const auto f = make_eigenfunction(AssocLegendre{90, 70});
        const auto checked = lp_norm_on_curve_checked(f, c, p, curve_grid_floor(f.lambda));
        CHECK(checked.relative_change < 1e-5);
    }
}

TEST_CASE("sup norm dominates every length-normalized Lp norm") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> deg(5, 60);
    const auto c = CurveSpec::latitude(0.8);
    for (int i = 0; i < 10; ++i) {
        const int n = deg(rng);
        const auto f = make_eigenfunction(AssocLegendre{n, n / 2});
        const int N = curve_grid_floor(f.lambda);
        const double sup = lp_norm_on_curve(f, c, kInfinity, N);
        for (double p : {2.0, 3.0, 4.0, 6.0, 10.0}) {
            CHECK(lp_norm_on_curve(f, c, p, N) / std::pow(c.measure(), 1 / p) <= sup * (1 + 1e-12));
        }
    }
}

TEST_CASE("power-law fits of synthetic data") {
    const std::vector<double> lambdas{10, 20, 40, 80, 160};
    const auto exact = synthetic(lambdas, 1.0, 0.25);
    const auto fit = fit_exponent(exact, 0.25, 0.02);
    CHECK(fit.slope == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(std::abs(fit.residual) < 1e-13);
    CHECK(fit.verdict == Verdict::Pass);

    const auto scaled = synthetic(lambdas, 3.0, 0.5);
    const auto f2 = fit_power_law(lambdas, ratios(scaled));
    CHECK(f2.slope == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(f2.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-13));

    CHECK(fit_exponent(exact, 0.4, 0.02).verdict == Verdict::Fail);
    const auto none = fit_exponent(exact, 0.4, std::nullopt);
    CHECK(none.verdict == Verdict::NoContract);
    CHECK(std::isnan(none.tolerance));

    CHECK_THROWS_AS(fit_exponent(synthetic({1, 2, 3}, 1.0, 0.1), 0.1, 0.1), std::invalid_argument);
    auto zero = exact;
    zero[2].ratio = 0.0;
    CHECK_THROWS_AS(fit_exponent(zero, 0.25, 0.02), std::invalid_argument);
}

TEST_CASE("theoretical exponent table") {
    // (d, k, p, curved) -> (value, log endpoint)
    struct Row {
        int d, k;
        double p;
        bool curved;
        double value;
        bool log;
    };
    const double inf = kInfinity;
    const Row rows[] = {
        {2, 1, 2, false, 0.25, false},       {2, 1, 3, false, 0.25, false},
        {2, 1, 4, false, 0.25, true},        {2, 1, 6, false, 1.0 / 3.0, false},
        {2, 1, inf, false, 0.5, false},      {2, 1, 2, true, 1.0 / 6.0, false},
        {2, 1, 3, true, 2.0 / 9.0, false},   {2, 1, 4, true, 0.25, true},
        {2, 1, 6, true, 1.0 / 3.0, false},   {3, 2, 2, false, 0.25, false},
        {3, 2, 3, false, 1.0 / 3.0, true},   {3, 2, 4, false, 0.5, false},
        {3, 2, 6, false, 2.0 / 3.0, false},  {3, 2, inf, false, 1.0, false},
        {3, 1, 2, false, 0.5, true},         {3, 1, 4, false, 0.75, false},
        {3, 1, inf, false, 1.0, false},      {4, 3, 8.0 / 3.0, false, 0.375, true},
        {4, 2, 2, false, 0.5, true},         {4, 2, 4, false, 1.0, false},
        {4, 1, 2, false, 1.0, false},        {4, 1, 4, false, 1.25, false},
    };
    for (const auto& r : rows) {
        CAPTURE(r.d);
        CAPTURE(r.k);
        CAPTURE(r.p);
        const auto t = theoretical_exponent(r.d, r.k, r.p, r.curved);
        CHECK(t.value == doctest::Approx(r.value).epsilon(1e-14));
        CHECK(t.log_endpoint == r.log);
    }
    CHECK_THROWS_AS(theoretical_exponent(2, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(theoretical_exponent(3, 3, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(theoretical_exponent(3, 2, 2.0, true), std::invalid_argument);
}

TEST_CASE("shape of the surface exponent curves") {
    double previous = -1.0;
    for (double p = 4.0; p < 400.0; p *= 1.1) {
        const double v = theoretical_exponent(2, 1, p).value;
        CHECK(v >= previous);
        previous = v;
    }
    CHECK(theoretical_exponent(2, 1, kInfinity).value >= previous);
    for (double p = 2.0; p <= 4.0; p += 0.125) CHECK(theoretical_exponent(2, 1, p).value == 0.25);
    for (double p = 2.0; p < 4.0; p += 0.125) {
        CHECK(theoretical_exponent(2, 1, p, true).value < theoretical_exponent(2, 1, p).value);
    }
    CHECK(theoretical_exponent(2, 1, 4.0, true).value == doctest::Approx(0.25));
    CHECK(theoretical_exponent(2, 1, 4.0).value == 0.25);
}

TEST_CASE("geometric degree ladders") {
    CHECK(geometric_degrees(16, 256) == std::vector<int>{16, 23, 32, 45, 64, 91, 128, 181, 256});
    CHECK(geometric_degrees(5, 5) == std::vector<int>{5});
    CHECK_THROWS_AS(geometric_degrees(0, 10), std::invalid_argument);
}

TEST_CASE("envelope check") {
    const auto exact = synthetic({10, 20, 40, 80}, 2.0, 0.25);
    CHECK(check_envelope(exact, 0.25).holds);
    auto bumped = exact;
    bumped[3].ratio *= 1.2;
    const auto bad = check_envelope(bumped, 0.25);
    CHECK_FALSE(bad.holds);
    CHECK(bad.worst_index == 3);
    CHECK(check_envelope(synthetic({10, 20, 40, 80}, 2.0, 0.3), 0.25).holds == false);
}

TEST_CASE("short sweeps over every family stay under their envelopes") {
    const std::vector<int> even{8, 12, 16, 24, 32};
    const auto eq = CurveSpec::equator();
    const auto lat = CurveSpec::latitude(pi / 3);
    struct Case {
        const char* name;
        FamilyTemplate family;
        CurveSpec curve;
    };
    const Case cases[] = {
        {"highest-weight / equator", highest_weight_family(2), eq},
        {"highest-weight / latitude", highest_weight_family(2), lat},
        {"zonal on curve / equator", zonal_family(2, curve_point(eq, 0.0)), eq},
        {"zonal on curve / latitude", zonal_family(2, curve_point(lat, 0.0)), lat},
        {"zonal off curve / equator", zonal_family(2, UnitVector{0, 0, 1}), eq},
        {"averaged / equator", averaged_family(0.5), eq},
        {"averaged / latitude", averaged_family(0.5), lat},
    };
    for (const auto& c : cases) {
        for (double p : {2.0, 4.0, 6.0, kInfinity}) {
            CAPTURE(c.name);
            CAPTURE(p);
            const bool curved = c.curve.kind() == CurveKind::LatitudeCircle;
            const auto samples = sweep(c.family, c.curve, p, even);
            CHECK(check_envelope(samples, theoretical_exponent(2, 1, p, curved).value).holds);
        }
    }
}

TEST_CASE("highest weight growth on the equator at p = 2") {
    const auto samples = sweep(highest_weight_family(2), CurveSpec::equator(), 2.0, geometric_degrees(16, 64));
    const auto fit = fit_exponent(samples, 0.25, 0.03);
    CHECK(fit.verdict == Verdict::Pass);
    for (const auto& s : samples) CHECK(s.ambient_norm == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("zonal harmonics with the pole off the curve stay bounded") {
    // Odd degrees vanish identically on the equator, so the ladder uses even degrees.
    const std::vector<int> degrees{16, 24, 32, 46, 64, 90, 128};
    const auto samples = sweep(zonal_family(2, UnitVector{0, 0, 1}), CurveSpec::equator(), 2.0, degrees);
    const auto fit = fit_exponent(samples, 0.0, 0.02);
    CHECK(std::abs(fit.slope) < 0.02);
    for (const auto& s : samples) CHECK(s.ratio < 1.0);
}

TEST_CASE("great-subsphere restriction on S^3") {
    const auto c = CurveSpec::great_subsphere();
    const auto pole = subsphere_point(c, pi / 2, 0.0);
    const auto samples = sweep(zonal_family(3, pole), c, 4.0, std::vector<int>{8, 11, 16, 23, 32});
    const auto fit = fit_exponent(samples, 0.5, 0.06);
    CHECK(fit.verdict == Verdict::Pass);
}

TEST_CASE("turning point sweep chooses orders near the matching latitude") {
    const double colat = pi / 4;
    const auto r = turning_point_sweep(colat, std::vector<int>{16, 23, 32, 45});
    REQUIRE(r.best_order.size() == 4);
    for (std::size_t i = 0; i < r.best_order.size(); ++i) {
        const int n = r.samples[i].n;
        // Y_n^m turns at colatitude asin(m / sqrt(n (n + 1))).
        const double turning = std::asin(r.best_order[i] / std::sqrt(n * (n + 1.0)));
        CHECK(std::abs(turning - colat) < 0.15);
    }
}

}  // TEST_SUITE
