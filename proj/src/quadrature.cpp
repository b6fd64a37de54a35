#include "eigenrestrict/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eigenrestrict {

GaussLegendreRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

GaussLegendreRule gauss_legendre(int n, double a, double b) {
    auto rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (auto& x : rule.nodes) x = mid + half * x;
    for (auto& w : rule.weights) w *= half;
    return rule;
}

double bump(double u) {
    const double s = 1.0 - u * u;
    if (s <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / s);
}

namespace {

double raw_bump(double u) {
    const double s = 1.0 - u * u;
    return s <= 0.0 ? 0.0 : std::exp(-1.0 / s);
}

double raw_bump_mass() {
    // Composite Gauss-Legendre; the integrand is flat to all orders at +-1.
    constexpr int panels = 64;
    const auto rule = gauss_legendre(24);
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = -1.0 + 2.0 * p / panels, b = a + 2.0 / panels;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i];
            sum += 0.5 * (b - a) * rule.weights[i] * raw_bump(x);
        }
    }
    return sum;
}

// exp(-1/x) for x > 0, else 0.
double smooth_step_piece(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double unit_mass_bump(double u) {
    static const double mass = raw_bump_mass();
    return raw_bump(u) / mass;
}

double smooth_cutoff(double x) {
    const double ax = std::abs(x);
    if (ax <= 0.5) return 1.0;
    if (ax >= 1.0) return 0.0;
    const double s = 2.0 * (ax - 0.5);
    const double a = smooth_step_piece(1.0 - s), b = smooth_step_piece(s);
    return a / (a + b);
}

}  // namespace eigenrestrict
