#include "eigenrestrict/oscillatory.hpp"

#include "eigenrestrict/linalg.hpp"
#include "eigenrestrict/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eigenrestrict {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;
}  // namespace

void validate(const KernelSpec& spec) {
    if (spec.curve.kind() == CurveKind::GreatSubsphere) throw std::invalid_argument("KernelSpec: curves on S^2 only");
    if (!(spec.r > 0.0 && spec.r < kPi / 2)) throw std::invalid_argument("KernelSpec: r must lie in (0, pi/2)");
    if (!(spec.lambda >= 0.0)) throw std::invalid_argument("KernelSpec: lambda must be nonnegative");
    if (!(spec.window > 0.0 && 2 * spec.window < spec.curve.measure() / 2)) {
        throw std::invalid_argument("KernelSpec: window must be positive and inside the injectivity range");
    }
}

Vec kernel_direction(const KernelSpec& spec, double w) {
    const UnitVector x0 = curve_point(spec.curve, spec.center);
    const Vec e1 = curve_tangent(spec.curve, spec.center);
    const Vec e2 = cross(x0.vec(), e1);
    return std::cos(w) * e1 + std::sin(w) * e2;
}

double kernel_amplitude(const KernelSpec& spec, double t) { return bump((t - spec.center) / spec.window); }

int kernel_node_floor(const KernelSpec& spec, double t, double tau) {
    const double dist = sphere_distance(curve_point(spec.curve, t), curve_point(spec.curve, tau));
    return 64 + static_cast<int>(std::ceil(20.0 * spec.lambda * 2.0 * dist / kTwoPi));
}

Complex kernel_K(const KernelSpec& spec, double t, double tau, int M) {
    validate(spec);
    const int floor = kernel_node_floor(spec, t, tau);
    if (M < floor) {
        throw std::invalid_argument("kernel_K: " + std::to_string(M) + " circle nodes under-resolve the phase; need M >= " +
                                    std::to_string(floor));
    }
    const double amp = kernel_amplitude(spec, t) * kernel_amplitude(spec, tau);
    if (amp == 0.0) return 0.0;
    const UnitVector x0 = curve_point(spec.curve, spec.center);
    const Vec e1 = curve_tangent(spec.curve, spec.center);
    const Vec e2 = cross(x0.vec(), e1);
    const UnitVector xt = curve_point(spec.curve, t), xs = curve_point(spec.curve, tau);
    Complex sum = 0.0;
    for (int k = 0; k < M; ++k) {
        const double w = kTwoPi * k / M;
        const UnitVector y = exp_map(x0, spec.r * (std::cos(w) * e1 + std::sin(w) * e2));
        const double phase = sphere_distance(xs, y) - sphere_distance(xt, y);
        sum += std::polar(1.0, spec.lambda * phase);
    }
    return amp * (kTwoPi / M) * sum;
}

Complex kernel_K(const KernelSpec& spec, double t, double tau) {
    return kernel_K(spec, t, tau, kernel_node_floor(spec, t, tau));
}

KernelBoundReport verify_kernel_bound(const KernelSpec& base, std::span<const double> lambdas, int grid) {
    if (lambdas.empty()) throw std::invalid_argument("verify_kernel_bound: empty lambda list");
    if (grid < 3) throw std::invalid_argument("verify_kernel_bound: grid must have at least 3 points per axis");
    KernelBoundReport report{{lambdas.begin(), lambdas.end()}, {}, {}, true};
    for (double lambda : lambdas) {
        if (!(lambda > 0.0)) throw std::invalid_argument("verify_kernel_bound: lambdas must be positive");
        KernelSpec spec = base;
        spec.lambda = lambda;
        validate(spec);
        double sup = 0.0;
        bool any = false;
        for (int i = 0; i < grid; ++i) {
            const double t = spec.center - spec.window + 2.0 * spec.window * i / (grid - 1);
            for (int j = 0; j < grid; ++j) {
                const double tau = spec.center - spec.window + 2.0 * spec.window * j / (grid - 1);
                const double gap = std::abs(t - tau);
                if (gap < 2.0 / lambda) continue;
                any = true;
                sup = std::max(sup, std::abs(kernel_K(spec, t, tau)) * std::sqrt(1.0 + lambda * gap));
            }
        }
        if (!any) throw std::invalid_argument("verify_kernel_bound: no admissible (t, tau) pairs on the grid");
        report.sup_scaled.push_back(sup);
    }
    for (std::size_t i = 1; i < report.sup_scaled.size(); ++i) {
        const double ratio = report.sup_scaled[i] / report.sup_scaled[i - 1];
        report.ratios.push_back(ratio);
        if (!(ratio >= 0.5 && ratio <= 1.5)) report.uniform = false;
    }
    return report;
}

double phase_difference(const UnitVector& x, const UnitVector& xp, double r, const Vec& omega) {
    const UnitVector y = exp_map(xp, r * omega);
    return sphere_distance(xp, y) - sphere_distance(x, y);
}

CriticalPoints critical_points(const UnitVector& x, const UnitVector& xp, double r) {
    const double dist = sphere_distance(x, xp);
    if (dist == 0.0) throw std::domain_error("critical_points: x and x' coincide");
    if (!(r < kPi / 2)) throw std::invalid_argument("critical_points: need r < pi/2");
    if (!(dist < r)) throw std::invalid_argument("critical_points: need d(x, x') < r");
    const Vec star = tangent_toward(xp, x);
    const Vec opposite = -1.0 * star;
    return {star, opposite, phase_difference(x, xp, r, star), phase_difference(x, xp, r, opposite)};
}

double phase_expansion_fit(const CurveSpec& c, double tau, std::span<const double> steps) {
    if (steps.size() < 4) throw std::invalid_argument("phase_expansion_fit: need at least 4 steps");
    const auto n = static_cast<Eigen::Index>(steps.size());
    Eigen::MatrixXd a(n, 4);
    Eigen::VectorXd b(n);
    const UnitVector base = curve_point(c, tau);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double h = steps[static_cast<std::size_t>(i)];
        if (!(h >= 1e-3 && h <= 1e-1)) throw std::invalid_argument("phase_expansion_fit: steps must lie in [1e-3, 1e-1]");
        const double dist = sphere_distance(curve_point(c, tau + h), base);
        a.row(i) << 1.0, h, h * h, h * h * h;
        b(i) = (h - dist) / (h * h * h);
    }
    const auto qr = a.colPivHouseholderQr();
    if (qr.rank() < 4) throw std::invalid_argument("phase_expansion_fit: degenerate steps (need 4 distinct values)");
    return qr.solve(b)(0);
}

std::vector<double> default_phase_steps() {
    std::vector<double> steps;
    for (int i = 0; i < 8; ++i) steps.push_back(0.005 * std::pow(20.0, i / 7.0));
    return steps;
}

AirySpec airy_model_case(double lambda) {
    AirySpec s;
    s.c = [](double) { return 1.0; };
    s.d = [](double, double) { return 0.0; };
    s.a = [](double, double) { return 1.0; };
    s.lambda = lambda;
    s.c_min = 1.0;
    return s;
}

AirySpec airy_variable_case(double lambda) {
    AirySpec s = airy_model_case(lambda);
    s.c = [](double tau) { return 1.0 + 0.2 * std::sin(tau); };
    s.d = [](double, double) { return 0.1; };
    s.c_min = 0.8;
    return s;
}

double airy_operator_norm(const AirySpec& spec, double step, std::size_t memory_cap) {
    if (!spec.c || !spec.d || !spec.a) throw std::invalid_argument("AirySpec: c, d and a must all be set");
    if (!(spec.lambda > 0.0)) throw std::invalid_argument("AirySpec: lambda must be positive");
    if (!(spec.c_min > 0.0)) throw std::invalid_argument("AirySpec: c_min must be positive");
    if (!(spec.length > 0.0)) throw std::invalid_argument("AirySpec: length must be positive");
    if (spec.sign != 1 && spec.sign != -1) throw std::invalid_argument("AirySpec: sign must be +1 or -1");
    const double max_step = kTwoPi / spec.lambda / 20.0;
    if (!(step > 0.0) || step > max_step * (1.0 + 1e-12)) {
        throw std::invalid_argument("airy_operator_norm: step must be in (0, " + std::to_string(max_step) + "]");
    }
    const auto n = static_cast<std::size_t>(std::ceil(spec.length / step - 1e-9));
    const double h = spec.length / static_cast<double>(n);
    const std::size_t bytes = n * n * sizeof(Complex);
    if (bytes / n / n != sizeof(Complex) || bytes > memory_cap) {
        throw std::length_error("airy_operator_norm: " + std::to_string(n) + "^2 matrix exceeds the memory cap of " +
                                std::to_string(memory_cap) + " bytes; use a larger step at a smaller lambda");
    }
    std::vector<double> t(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = (static_cast<double>(i) + 0.5) * h;
        c[i] = spec.c(t[i]);
        if (c[i] < spec.c_min) throw std::invalid_argument("AirySpec: c drops below c_min on the domain");
    }
    const double lam = spec.lambda, cbrt_lam = std::cbrt(lam);
    const auto nn = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd m(nn, nn);
    for (Eigen::Index j = 0; j < nn; ++j) {
        const double tau = t[static_cast<std::size_t>(j)];
        for (Eigen::Index i = 0; i < nn; ++i) {
            const double s = t[static_cast<std::size_t>(i)] - tau;
            const double cut = 1.0 - smooth_cutoff(cbrt_lam * s);
            const double amp = cut == 0.0 ? 0.0 : spec.a(tau, s);
            if (amp == 0.0) {
                m(i, j) = 0.0;
                continue;
            }
            const double as = std::abs(s);
            const double g = spec.sign * as * (1.0 - c[static_cast<std::size_t>(j)] * s * s + spec.d(tau, s) * s * s * s);
            m(i, j) = (h * amp * cut / std::sqrt(lam * as)) * std::polar(1.0, lam * g);
        }
    }
    return top_singular_value(m).sigma;
}

double airy_operator_norm(const AirySpec& spec) {
    if (!(spec.lambda > 0.0)) throw std::invalid_argument("AirySpec: lambda must be positive");
    return airy_operator_norm(spec, kTwoPi / spec.lambda / 20.0);
}

}  // namespace eigenrestrict
