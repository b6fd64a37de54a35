#pragma once

#include "eigenrestrict/geometry.hpp"
#include "eigenrestrict/harmonics.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace eigenrestrict {

// Oscillatory kernel on a curve patch:
//   K(t, tau) = int_{S^1} e^{i lambda [psi(x(t), w) - psi(x(tau), w)]} a(t) a(tau) dw,
//   psi(x, w) = -d(x, exp_{x0}(r w)),
// with x0 = gamma(center) and a(t) = bump((t - center) / window).
struct KernelSpec {
    CurveSpec curve;
    double r = 0.4;
    double lambda = 0.0;
    double center = 0.0;
    double window = 0.2;
};

void validate(const KernelSpec& spec);

// Unit direction at the patch center for circle angle w (tangent frame gamma', x0 x gamma').
Vec kernel_direction(const KernelSpec& spec, double w);

// a(t): C^infinity bump with peak 1 at the center, supported on |t - center| < window.
double kernel_amplitude(const KernelSpec& spec, double t);

// Minimal circle quadrature size: 64 + 20 lambda (2 d(x(t), x(tau))) / 2pi, rounded up.
int kernel_node_floor(const KernelSpec& spec, double t, double tau);

// Periodic trapezoid rule with M nodes. Throws if M is below kernel_node_floor.
Complex kernel_K(const KernelSpec& spec, double t, double tau, int M);
// Same with M = kernel_node_floor.
Complex kernel_K(const KernelSpec& spec, double t, double tau);

struct KernelBoundReport {
    std::vector<double> lambdas;
    std::vector<double> sup_scaled;  // sup |K| (1 + lambda |t - tau|)^{1/2} over the admissible grid
    std::vector<double> ratios;      // sup_scaled[i + 1] / sup_scaled[i]
    bool uniform;                    // every ratio in [0.5, 1.5]
};

// Evaluates the scaled kernel on a grid x grid lattice of the patch, skipping |t - tau| < 2 / lambda.
// `base` supplies curve, r, center and window; its lambda is ignored.
KernelBoundReport verify_kernel_bound(const KernelSpec& base, std::span<const double> lambdas, int grid = 41);

// Phase difference psi_r(x, w) - psi_r(x', w) = d(x', y) - d(x, y), y = exp_{x'}(r w).
double phase_difference(const UnitVector& x, const UnitVector& xp, double r, const Vec& omega);

struct CriticalPoints {
    Vec omega_star;      // unit tangent at x' pointing toward x
    Vec omega_opposite;  // -omega_star
    double phase_star;      // evaluated directly: +d(x, x') (the maximum over w)
    double phase_opposite;  // evaluated directly: -d(x, x') (the minimum over w)
};

// Requires 0 < d(x, x') < r < pi/2.
CriticalPoints critical_points(const UnitVector& x, const UnitVector& xp, double r);

// Fits c in d(gamma(tau + h), gamma(tau)) = h (1 - c h^2 + O(h^3)) from the given steps
// (each in [1e-3, 1e-1], at least 4 distinct values) by least squares on (h - d) / h^3
// against {1, h, h^2, h^3}.
double phase_expansion_fit(const CurveSpec& c, double tau, std::span<const double> steps);
// Default ladder: 8 geometric steps from 0.005 to 0.1.
std::vector<double> default_phase_steps();

// Airy-regime convolution-type kernel on [0, length):
//   k(t, tau) = e^{i lambda g} a(tau, t - tau) / (lambda |t - tau|)^{1/2} (1 - chi)(lambda^{1/3} (t - tau)),
//   g = sign |t - tau| (1 - c(tau)(t - tau)^2 + d(tau, t - tau)(t - tau)^3).
struct AirySpec {
    std::function<double(double)> c;
    std::function<double(double, double)> d;
    std::function<double(double, double)> a;
    double lambda = 0.0;
    double c_min = 0.0;  // required positive lower bound for c on the domain
    double length = 1.0;
    int sign = -1;
};

AirySpec airy_model_case(double lambda);
// c = 1 + 0.2 sin(tau), d = 0.1.
AirySpec airy_variable_case(double lambda);

inline constexpr std::size_t kDefaultMemoryCap = std::size_t{512} << 20;

// Largest singular value of the step-weighted dense kernel matrix on the midpoint grid.
// Requires step <= (2pi/lambda)/20 and a matrix that fits within memory_cap bytes.
double airy_operator_norm(const AirySpec& spec, double step, std::size_t memory_cap = kDefaultMemoryCap);
// Same with step = (2pi/lambda)/20.
double airy_operator_norm(const AirySpec& spec);

}  // namespace eigenrestrict
