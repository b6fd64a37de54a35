#include "eigenrestrict/restriction.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eigenrestrict {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::NoContract: return "no_contract";
    }
    return "unknown";
}

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_power_law: size mismatch");
    if (x.size() < 2) throw std::invalid_argument("fit_power_law: need at least 2 points");
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd a(n, 2);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double xi = x[static_cast<std::size_t>(i)], yi = y[static_cast<std::size_t>(i)];
        if (!(xi > 0.0) || !(yi > 0.0) || !std::isfinite(xi) || !std::isfinite(yi)) {
            throw std::invalid_argument("fit_power_law: values must be finite and positive");
        }
        a(i, 0) = std::log(xi);
        a(i, 1) = 1.0;
        b(i) = std::log(yi);
    }
    const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(b);
    const double rms = std::sqrt((a * coef - b).squaredNorm() / static_cast<double>(n));
    return {coef(0), coef(1), rms};
}

ExponentFit fit_exponent(std::span<const NormSample> samples, double theoretical, std::optional<double> tolerance,
                         bool log_endpoint) {
    if (samples.size() < 4) throw std::invalid_argument("fit_exponent: need at least 4 samples");
    std::vector<double> lambdas, ratios;
    for (const auto& s : samples) {
        if (!(s.ratio > 0.0)) {
            throw std::invalid_argument("fit_exponent: nonpositive ratio at n = " + std::to_string(s.n));
        }
        if (!(s.lambda > 0.0)) throw std::invalid_argument("fit_exponent: lambda must be positive");
        lambdas.push_back(s.lambda);
        ratios.push_back(s.ratio);
    }
    const PowerLawFit fit = fit_power_law(lambdas, ratios);
    ExponentFit out{fit.slope, fit.intercept, fit.residual, theoretical,
                    tolerance.value_or(std::numeric_limits<double>::quiet_NaN()), Verdict::NoContract};
    if (tolerance && !log_endpoint) {
        out.verdict = std::abs(fit.slope - theoretical) <= *tolerance ? Verdict::Pass : Verdict::Fail;
    }
    return out;
}

TheoreticalExponent theoretical_exponent(int d, int k, double p, bool curved) {
    if (d < 2) throw std::invalid_argument("theoretical_exponent: need d >= 2");
    if (k < 1 || k > d - 1) throw std::invalid_argument("theoretical_exponent: need 1 <= k <= d - 1");
    if (std::isnan(p) || p < 2.0) throw std::invalid_argument("theoretical_exponent: need p >= 2");
    if (curved && !(d == 2 && k == 1)) {
        throw std::invalid_argument("theoretical_exponent: curvature improvement only for curves on surfaces");
    }
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    const double dd = d;
    auto same = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };

    if (k == d - 1) {
        const double p0 = 2.0 * dd / (dd - 1.0);
        const bool endpoint = same(p, p0);
        if (curved && p <= 4.0) return {1.0 / 3.0 - inv_p / 3.0, endpoint};
        if (endpoint) return {(dd - 1.0) / (2.0 * dd), true};
        if (p > p0) return {(dd - 1.0) / 2.0 - (dd - 1.0) * inv_p, false};
        return {(dd - 1.0) / 4.0 - (dd - 2.0) * inv_p / 2.0, false};
    }
    if (k == d - 2) {
        if (same(p, 2.0)) return {0.5, true};
        return {(dd - 1.0) / 2.0 - (dd - 2.0) * inv_p, false};
    }
    return {(dd - 1.0) / 2.0 - k * inv_p, false};
}

int curve_grid_floor(double lambda) { return std::max(4096, static_cast<int>(std::ceil(20.0 * lambda))); }

int manifold_resolution_floor(int n) { return 2 * n + 16; }

namespace {

bool is_subsphere(const CurveSpec& c) { return c.kind() == CurveKind::GreatSubsphere; }

int required_points(const SphereEigenfunction& f, const CurveSpec& c, double p) {
    if (!is_subsphere(c)) return curve_grid_floor(f.lambda);
    int floor = manifold_resolution_floor(f.degree);
    if (std::isfinite(p)) floor = std::max(floor, static_cast<int>(std::ceil(p * f.degree / 2.0)) + 16);
    return floor;
}

void validate_p(double p) {
    if (std::isnan(p) || p < 2.0) throw std::invalid_argument("L^p norm: need p >= 2 or p = infinity");
}

double modulus_on_curve(const SphereEigenfunction& f, const CurveSpec& c, double s) {
    return std::abs(f(curve_point(c, s)));
}

// Golden-section maximization of |f(gamma(s))| on [a, b].
double refine_maximum(const SphereEigenfunction& f, const CurveSpec& c, double a, double b) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = modulus_on_curve(f, c, x1), f2 = modulus_on_curve(f, c, x2);
    for (int it = 0; it < 60 && (b - a) > 1e-13; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = modulus_on_curve(f, c, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = modulus_on_curve(f, c, x1);
        }
    }
    return std::max(f1, f2);
}

double curve_norm(const SphereEigenfunction& f, const CurveSpec& c, double p, int N) {
    const QuadratureGrid grid = build_curve_grid(c, N);
    std::vector<double> mod(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) mod[i] = std::abs(f(grid.node(i)));

    if (std::isfinite(p)) {
        double sum = 0.0;
        for (std::size_t i = 0; i < mod.size(); ++i) sum += grid.weight(i) * std::pow(mod[i], p);
        return std::pow(sum, 1.0 / p);
    }
    double best = *std::max_element(mod.begin(), mod.end());
    if (is_subsphere(c)) return best;

    // Refine the largest few periodic local maxima.
    const std::size_t n = mod.size();
    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < n; ++i) {
        const double left = mod[(i + n - 1) % n], right = mod[(i + 1) % n];
        if (mod[i] >= left && mod[i] >= right) peaks.push_back(i);
    }
    const std::size_t keep = std::min<std::size_t>(8, peaks.size());
    std::partial_sort(peaks.begin(), peaks.begin() + static_cast<std::ptrdiff_t>(keep), peaks.end(),
                      [&](std::size_t a, std::size_t b) { return mod[a] > mod[b]; });
    const double h = c.measure() / static_cast<double>(n);
    for (std::size_t k = 0; k < keep; ++k) {
        const double s = grid.arc_length(peaks[k]);
        best = std::max(best, refine_maximum(f, c, s - h, s + h));
    }
    return best;
}

}  // namespace

double lp_norm_on_curve(const SphereEigenfunction& f, const CurveSpec& c, double p, int N) {
    validate_p(p);
    if (c.ambient_dim() != f.dim + 1) throw std::invalid_argument("lp_norm_on_curve: curve and function live on different spheres");
    const int floor = required_points(f, c, p);
    if (N < floor) {
        throw std::invalid_argument("lp_norm_on_curve: grid of " + std::to_string(N) +
                                    " points is under-resolved; need N >= " + std::to_string(floor));
    }
    return curve_norm(f, c, p, N);
}

CheckedNorm lp_norm_on_curve_checked(const SphereEigenfunction& f, const CurveSpec& c, double p, int N,
                                     double tolerance) {
    const double value = lp_norm_on_curve(f, c, p, N);
    const double doubled = lp_norm_on_curve(f, c, p, 2 * N);
    const double change = value > 0.0 ? std::abs(doubled - value) / value : std::abs(doubled);
    if (!(change < tolerance)) {
        throw std::runtime_error("lp_norm_on_curve: grid doubling changed the norm by " + std::to_string(change) +
                                 " (relative) at n = " + std::to_string(f.degree));
    }
    return {value, doubled, change};
}

double l2_norm_on_manifold(const std::function<Complex(const UnitVector&)>& f, const QuadratureGrid& grid) {
    double sum = 0.0;
    grid.for_each([&](const UnitVector& x, double w) { sum += w * std::norm(f(x)); });
    return std::sqrt(sum);
}

double l2_norm_on_manifold(const SphereEigenfunction& f, const QuadratureGrid& grid) {
    if (grid.layout() == QuadratureGrid::Layout::Curve || grid.sphere_dim() != f.dim) {
        throw std::invalid_argument("l2_norm_on_manifold: grid does not cover the function's sphere");
    }
    if (grid.resolution() < manifold_resolution_floor(f.degree)) {
        throw std::invalid_argument("l2_norm_on_manifold: resolution " + std::to_string(grid.resolution()) +
                                    " too small for degree " + std::to_string(f.degree) + "; need " +
                                    std::to_string(manifold_resolution_floor(f.degree)));
    }
    return l2_norm_on_manifold(f.eval, grid);
}

FamilyTemplate highest_weight_family(int d) {
    return [d](int n) -> HarmonicSpec { return HighestWeight{d, n}; };
}

FamilyTemplate zonal_family(int d, const UnitVector& pole) {
    return [d, pole](int n) -> HarmonicSpec { return Zonal{d, n, pole}; };
}

FamilyTemplate averaged_family(double delta) {
    return [delta](int n) -> HarmonicSpec { return Averaged{n, delta, {}}; };
}

namespace {

void validate_degrees(std::span<const int> degrees) {
    if (degrees.size() < 4) throw std::invalid_argument("sweep: need at least 4 degrees");
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] < 1) throw std::invalid_argument("sweep: degrees must be positive");
        if (i > 0 && degrees[i] <= degrees[i - 1]) throw std::invalid_argument("sweep: degrees must increase strictly");
    }
}

NormSample measure(const SphereEigenfunction& f, const CurveSpec& c, double p, const SweepOptions& options) {
    const int points = options.curve_points > 0 ? options.curve_points : required_points(f, c, p);
    const double restricted = options.check_convergence ? lp_norm_on_curve_checked(f, c, p, points).value
                                                        : lp_norm_on_curve(f, c, p, points);
    const int resolution =
        options.ambient_resolution > 0 ? options.ambient_resolution : manifold_resolution_floor(f.degree);
    const double ambient = l2_norm_on_manifold(f, build_sphere_grid(f.dim, resolution));
    return {f.degree, f.lambda, p, restricted, ambient, restricted / ambient};
}

}  // namespace

std::vector<NormSample> sweep(const FamilyTemplate& family, const CurveSpec& c, double p,
                              std::span<const int> degrees, const SweepOptions& options) {
    validate_degrees(degrees);
    std::vector<NormSample> out;
    out.reserve(degrees.size());
    for (int n : degrees) out.push_back(measure(make_eigenfunction(family(n)), c, p, options));
    return out;
}

TurningPointResult turning_point_sweep(double colatitude, std::span<const int> degrees, const SweepOptions& options) {
    validate_degrees(degrees);
    const CurveSpec c = CurveSpec::latitude(colatitude);
    TurningPointResult result;
    for (int n : degrees) {
        int best_m = -1;
        double best = -1.0;
        for (int m = (n + 1) / 2; m <= n; ++m) {
            const auto f = make_eigenfunction(AssocLegendre{n, m});
            const int points = options.curve_points > 0 ? options.curve_points : curve_grid_floor(f.lambda);
            const double value = lp_norm_on_curve(f, c, 2.0, points);
            if (value > best) {
                best = value;
                best_m = m;
            }
        }
        result.samples.push_back(measure(make_eigenfunction(AssocLegendre{n, best_m}), c, 2.0, options));
        result.best_order.push_back(best_m);
    }
    return result;
}

EnvelopeCheck check_envelope(std::span<const NormSample> samples, double delta, double margin) {
    if (samples.empty()) throw std::invalid_argument("check_envelope: no samples");
    const double e = delta + margin;
    const double constant = samples.front().ratio / std::pow(samples.front().lambda, e);
    EnvelopeCheck out{e, constant, 0.0, 0, true};
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double excess = samples[i].ratio / (constant * std::pow(samples[i].lambda, e));
        if (excess > out.worst_excess) {
            out.worst_excess = excess;
            out.worst_index = i;
        }
    }
    out.holds = out.worst_excess <= 1.0 + 1e-12;
    return out;
}

std::vector<int> geometric_degrees(int lo, int hi) {
    if (lo < 1 || hi < lo) throw std::invalid_argument("geometric_degrees: need 1 <= lo <= hi");
    std::vector<int> out;
    for (int k = 0;; ++k) {
        const double v = lo * std::pow(std::numbers::sqrt2, k);
        if (v > hi * (1.0 + 1e-12)) break;
        const int n = static_cast<int>(std::lround(v));
        if (out.empty() || n > out.back()) out.push_back(n);
    }
    return out;
}

}  // namespace eigenrestrict
