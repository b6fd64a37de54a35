#pragma once

#include "eigenrestrict/geometry.hpp"

#include <complex>
#include <functional>
#include <span>
#include <variant>
#include <vector>

namespace eigenrestrict {

using Complex = std::complex<double>;

// Eigenvalue lambda with -Delta phi = lambda^2 phi for degree-n harmonics on S^d.
double eigenvalue(int d, int n);

// L^2-normalized zonal harmonic of degree n about `pole` on S^d, d in {2, 3}.
double eval_zonal(int d, int n, const UnitVector& pole, const UnitVector& x);

// Fully normalized Y_n^m on S^2 (Condon-Shortley phase), |m| <= n.
Complex eval_assoc_harmonic(int n, int m, const UnitVector& x);

// Normalized associated Legendre factor: Y_n^m = P(cos theta) e^{i m phi}, m >= 0.
// Overflow-safe for n up to several thousand.
double normalized_legendre(int n, int m, double cos_theta, double sin_theta);

// c_{n,d} (x1 + i x2)^n with unit L^2(S^d) norm, d in {2, 3}.
Complex eval_highest_weight(int d, int n, const UnitVector& x);
// log c_{n,d}.
double highest_weight_log_norm(int d, int n);

// Superposition of rotated highest-weight harmonics on S^2,
//   u(x) ~ sum_j W_j (x1 + i(cos(phi_j) x2 + sin(phi_j) x3))^n,
// with W_j the Gauss-Legendre weights times profile(n^{1/3} phi_j / delta) on the
// window |phi| < delta n^{-1/3}. operator() is normalized to unit L^2 norm.
class AveragedHarmonic {
public:
    AveragedHarmonic(int n, double delta, std::function<double(double)> profile);

    int degree() const { return n_; }
    double delta() const { return delta_; }
    std::size_t node_count() const { return phi_.size(); }

    Complex operator()(const UnitVector& x) const;
    // Weighted mean of the normalized rotated harmonics (tends to the phi = 0 member as delta -> 0).
    Complex window_mean(const UnitVector& x) const;

private:
    Complex weighted_sum(const UnitVector& x) const;

    int n_;
    double delta_;
    double log_c_;
    std::vector<double> phi_, cos_phi_, sin_phi_, w_;
    double weight_sum_ = 0.0;
    double norm_ = 1.0;
};

Complex eval_averaged(int n, double delta, const std::function<double(double)>& profile, const UnitVector& x);

// Family members.
struct Zonal {
    int d;
    int n;
    UnitVector pole;
};
struct AssocLegendre {
    int n;
    int m;
};
struct HighestWeight {
    int d;
    int n;
};
struct Averaged {
    int n;
    double delta;
    std::function<double(double)> profile;  // unit mass on (-1, 1); defaults to the C^infinity bump
};

using HarmonicSpec = std::variant<Zonal, AssocLegendre, HighestWeight, Averaged>;

int sphere_dim(const HarmonicSpec& spec);
int degree(const HarmonicSpec& spec);

// Evaluable eigenfunction with its metadata. Cheap to copy (shared state).
struct SphereEigenfunction {
    std::function<Complex(const UnitVector&)> eval;
    double lambda;
    int degree;
    int dim;

    Complex operator()(const UnitVector& x) const { return eval(x); }
};

SphereEigenfunction make_eigenfunction(const HarmonicSpec& spec);

// ---- flat torus T^2 = [0, 2pi)^2 ----

struct LatticePoint {
    int m;
    int n;
    Complex coefficient;
};

// sum_k c_k e^{i(m_k x + n_k y)} with every (m_k, n_k) on one circle m^2 + n^2 = N.
class TorusSum {
public:
    explicit TorusSum(std::vector<LatticePoint> terms);

    long long radius_squared() const { return n_squared_; }
    std::span<const LatticePoint> terms() const { return terms_; }
    // (sum |c|^2)^{1/2}, the L^2 norm for the normalized measure dx dy / (2pi)^2.
    double l2_norm() const;
    double eigenvalue() const;

private:
    std::vector<LatticePoint> terms_;
    long long n_squared_ = 0;
};

Complex eval_torus(const TorusSum& f, double x, double y);

}  // namespace eigenrestrict
