#include "eigenrestrict/harmonics.hpp"

#include "eigenrestrict/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eigenrestrict {

namespace {

constexpr double kPi = std::numbers::pi;

void require_degree(int n) {
    if (n < 0) throw std::invalid_argument("degree must be nonnegative, got " + std::to_string(n));
}

void require_sphere(int d, const UnitVector& x, const char* what) {
    if (d != 2 && d != 3) {
        throw std::invalid_argument(std::string(what) + ": unsupported sphere dimension " + std::to_string(d));
    }
    if (x.sphere_dim() != d) {
        throw std::invalid_argument(std::string(what) + ": point does not lie on S^" + std::to_string(d));
    }
}

}  // namespace

double eigenvalue(int d, int n) {
    require_degree(n);
    if (d < 1) throw std::invalid_argument("eigenvalue: dimension must be positive");
    return std::sqrt(static_cast<double>(n) * (n + d - 1));
}

double eval_zonal(int d, int n, const UnitVector& pole, const UnitVector& x) {
    require_degree(n);
    require_sphere(d, x, "eval_zonal");
    require_sphere(d, pole, "eval_zonal");
    const double t = std::clamp(dot(pole.vec(), x.vec()), -1.0, 1.0);
    if (d == 2) {
        double p0 = 1.0, p1 = t;
        if (n == 0) p1 = 1.0;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        return std::sqrt((2.0 * n + 1.0) / (4 * kPi)) * p1;
    }
    // Chebyshev U_n = Gegenbauer C_n^1; integral of U_n^2 over S^3 is 2 pi^2.
    double u0 = 1.0, u1 = 2.0 * t;
    if (n == 0) u1 = 1.0;
    for (int k = 2; k <= n; ++k) {
        const double u2 = 2.0 * t * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    return u1 / (kPi * std::sqrt(2.0));
}

double normalized_legendre(int n, int m, double cos_theta, double sin_theta) {
    require_degree(n);
    if (m < 0 || m > n) throw std::invalid_argument("normalized_legendre: need 0 <= m <= n");
    if (m > 0 && sin_theta == 0.0) return 0.0;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    // log of sqrt((2m+1)/4pi * (2m)!/(2^m m!)^2) sin^m
    double log_scale = 0.5 * (std::log((2.0 * m + 1.0) / (4 * kPi)) + std::lgamma(2.0 * m + 1.0) -
                              2.0 * m * std::numbers::ln2 - 2.0 * std::lgamma(m + 1.0));
    if (m > 0) log_scale += m * std::log(sin_theta);
    if (n == m) return sign * std::exp(log_scale);

    const double t = cos_theta;
    double a_prev = std::sqrt(2.0 * m + 3.0);
    double p_prev = 1.0, p = a_prev * t;
    constexpr double kBig = 1e200;
    const double log_big = std::log(kBig);
    const double mm = static_cast<double>(m) * m;
    for (int k = m + 2; k <= n; ++k) {
        const double kk = static_cast<double>(k) * k;
        const double a = std::sqrt((4.0 * kk - 1.0) / (kk - mm));
        const double next = a * (t * p - p_prev / a_prev);
        p_prev = p;
        p = next;
        a_prev = a;
        if (std::abs(p) > kBig) {
            p /= kBig;
            p_prev /= kBig;
            log_scale += log_big;
        }
    }
    if (p == 0.0) return 0.0;
    return sign * std::copysign(std::exp(std::log(std::abs(p)) + log_scale), p);
}

Complex eval_assoc_harmonic(int n, int m, const UnitVector& x) {
    require_degree(n);
    require_sphere(2, x, "eval_assoc_harmonic");
    const int am = std::abs(m);
    if (am > n) {
        throw std::invalid_argument("eval_assoc_harmonic: |m| = " + std::to_string(am) + " exceeds n = " +
                                    std::to_string(n));
    }
    const double s = std::hypot(x[0], x[1]);
    const double t = std::clamp(x[2], -1.0, 1.0);
    const double phi = std::atan2(x[1], x[0]);
    const Complex y = normalized_legendre(n, am, t, s) * std::polar(1.0, am * phi);
    if (m >= 0) return y;
    return (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

double highest_weight_log_norm(int d, int n) {
    require_degree(n);
    if (d == 2) {
        // c^2 = (2n+1)! / (2 pi 2^{2n+1} (n!)^2)
        return 0.5 * (std::lgamma(2.0 * n + 2.0) - std::log(2 * kPi) - (2.0 * n + 1.0) * std::numbers::ln2 -
                      2.0 * std::lgamma(n + 1.0));
    }
    if (d == 3) return 0.5 * std::log((n + 1.0) / (2 * kPi * kPi));
    throw std::invalid_argument("highest_weight_log_norm: unsupported sphere dimension " + std::to_string(d));
}

namespace {

// exp(log_c) z^n evaluated in log-polar form.
Complex scaled_power(double log_c, int n, Complex z) {
    if (n == 0) return std::exp(log_c);
    const double r = std::abs(z);
    if (r == 0.0) return 0.0;
    return std::polar(std::exp(log_c + n * std::log(r)), n * std::arg(z));
}

}  // namespace

Complex eval_highest_weight(int d, int n, const UnitVector& x) {
    require_sphere(d, x, "eval_highest_weight");
    return scaled_power(highest_weight_log_norm(d, n), n, Complex(x[0], x[1]));
}

AveragedHarmonic::AveragedHarmonic(int n, double delta, std::function<double(double)> profile)
    : n_(n), delta_(delta), log_c_(highest_weight_log_norm(2, n)) {
    if (n < 1) throw std::invalid_argument("AveragedHarmonic: degree must be >= 1");
    if (!(delta > 0.0)) throw std::invalid_argument("AveragedHarmonic: delta must be positive");
    if (!profile) profile = unit_mass_bump;
    const double cbrt_n = std::cbrt(static_cast<double>(n));
    const double half_width = delta / cbrt_n;
    if (half_width > kPi) {
        throw std::invalid_argument("AveragedHarmonic: window delta n^{-1/3} exceeds pi");
    }
    const int nodes = 32 + static_cast<int>(std::ceil(4.0 * cbrt_n));
    const auto rule = gauss_legendre(nodes, -half_width, half_width);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double phi = rule.nodes[j];
        const double w = rule.weights[j] * profile(phi / half_width);
        if (w == 0.0) continue;
        phi_.push_back(phi);
        cos_phi_.push_back(std::cos(phi));
        sin_phi_.push_back(std::sin(phi));
        w_.push_back(w);
        weight_sum_ += w;
    }
    if (w_.empty() || weight_sum_ == 0.0) throw std::invalid_argument("AveragedHarmonic: profile vanishes on window");
    // <H_a, H_b> = cos^{2n}((a - b)/2) for the normalized rotated harmonics.
    double sq = 0.0;
    for (std::size_t j = 0; j < w_.size(); ++j) {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            const double c = std::abs(std::cos(0.5 * (phi_[j] - phi_[k])));
            sq += w_[j] * w_[k] * std::exp(2.0 * n * std::log(c));
        }
    }
    norm_ = std::sqrt(sq);
}

Complex AveragedHarmonic::weighted_sum(const UnitVector& x) const {
    require_sphere(2, x, "AveragedHarmonic");
    Complex sum = 0.0;
    for (std::size_t j = 0; j < w_.size(); ++j) {
        const Complex z(x[0], cos_phi_[j] * x[1] + sin_phi_[j] * x[2]);
        sum += w_[j] * scaled_power(log_c_, n_, z);
    }
    return sum;
}

Complex AveragedHarmonic::operator()(const UnitVector& x) const { return weighted_sum(x) / norm_; }

Complex AveragedHarmonic::window_mean(const UnitVector& x) const { return weighted_sum(x) / weight_sum_; }

Complex eval_averaged(int n, double delta, const std::function<double(double)>& profile, const UnitVector& x) {
    return AveragedHarmonic(n, delta, profile)(x);
}

int sphere_dim(const HarmonicSpec& spec) {
    return std::visit(
        [](const auto& s) -> int {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Zonal> || std::is_same_v<T, HighestWeight>) {
                return s.d;
            } else {
                return 2;
            }
        },
        spec);
}

int degree(const HarmonicSpec& spec) {
    return std::visit([](const auto& s) { return s.n; }, spec);
}

SphereEigenfunction make_eigenfunction(const HarmonicSpec& spec) {
    const int d = sphere_dim(spec), n = degree(spec);
    SphereEigenfunction f{{}, eigenvalue(d, n), n, d};
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Zonal>) {
                if (s.pole.sphere_dim() != s.d) throw std::invalid_argument("Zonal: pole dimension mismatch");
                f.eval = [s](const UnitVector& x) { return Complex(eval_zonal(s.d, s.n, s.pole, x)); };
            } else if constexpr (std::is_same_v<T, AssocLegendre>) {
                if (std::abs(s.m) > s.n) throw std::invalid_argument("AssocLegendre: |m| exceeds n");
                f.eval = [s](const UnitVector& x) { return eval_assoc_harmonic(s.n, s.m, x); };
            } else if constexpr (std::is_same_v<T, HighestWeight>) {
                const double log_c = highest_weight_log_norm(s.d, s.n);
                f.eval = [s, log_c](const UnitVector& x) {
                    require_sphere(s.d, x, "eval_highest_weight");
                    return scaled_power(log_c, s.n, Complex(x[0], x[1]));
                };
            } else {
                auto h = std::make_shared<const AveragedHarmonic>(s.n, s.delta, s.profile);
                f.eval = [h](const UnitVector& x) { return (*h)(x); };
            }
        },
        spec);
    return f;
}

TorusSum::TorusSum(std::vector<LatticePoint> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("TorusSum: empty coefficient list");
    auto radius = [](const LatticePoint& p) { return static_cast<long long>(p.m) * p.m + static_cast<long long>(p.n) * p.n; };
    n_squared_ = radius(terms_.front());
    for (const auto& p : terms_) {
        if (radius(p) != n_squared_) {
            throw std::invalid_argument("TorusSum: lattice points lie on different circles (" +
                                        std::to_string(n_squared_) + " vs " + std::to_string(radius(p)) + ")");
        }
    }
}

double TorusSum::l2_norm() const {
    double s = 0.0;
    for (const auto& p : terms_) s += std::norm(p.coefficient);
    return std::sqrt(s);
}

double TorusSum::eigenvalue() const { return std::sqrt(static_cast<double>(n_squared_)); }

Complex eval_torus(const TorusSum& f, double x, double y) {
    Complex sum = 0.0;
    for (const auto& p : f.terms()) sum += p.coefficient * std::polar(1.0, p.m * x + p.n * y);
    return sum;
}

}  // namespace eigenrestrict
