#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace eigenrestrict {

// Largest ambient dimension handled (points of S^3 live in R^4).
inline constexpr int kMaxAmbient = 4;

// Small fixed-capacity vector of R^{k}, k <= kMaxAmbient.
class Vec {
public:
    Vec() = default;
    Vec(std::initializer_list<double> values);

    static Vec zeros(int dim);
    static Vec basis(int dim, int axis);

    int dim() const { return dim_; }
    double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
    std::span<const double> coords() const { return {c_.data(), static_cast<std::size_t>(dim_)}; }

    Vec& operator+=(const Vec& o);
    Vec& operator-=(const Vec& o);
    Vec& operator*=(double s);

private:
    std::array<double, kMaxAmbient> c_{};
    int dim_ = 0;
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator*(double s, Vec a);
double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
// R^3 only.
Vec cross(const Vec& a, const Vec& b);

// A point of S^d stored as a unit vector of R^{d+1}.
// Construction checks the norm to 1e-12 and d >= 2.
class UnitVector {
public:
    explicit UnitVector(const Vec& v);
    UnitVector(std::initializer_list<double> values) : UnitVector(Vec(values)) {}

    // Rescales v onto the sphere; throws for (near) zero vectors.
    static UnitVector normalize(Vec v);

    int ambient_dim() const { return v_.dim(); }
    int sphere_dim() const { return v_.dim() - 1; }
    const Vec& vec() const { return v_; }
    double operator[](int i) const { return v_[i]; }
    UnitVector operator-() const;

private:
    struct Unchecked {};
    UnitVector(const Vec& v, Unchecked) : v_(v) {}
    Vec v_;
};

inline constexpr double kUnitTolerance = 1e-12;
inline constexpr double kTangentTolerance = 1e-10;

// Geodesic distance on the round sphere, in [0, pi].
double sphere_distance(const UnitVector& x, const UnitVector& y);

// cos|v| x + sin|v| v/|v|; v must be tangent at x.
UnitVector exp_map(const UnitVector& x, const Vec& v);

// Unit tangent at `from` pointing along the minimizing geodesic to `to`.
Vec tangent_toward(const UnitVector& from, const UnitVector& to);

// Orthonormal basis of T_x S^d (d vectors), deterministic.
std::vector<Vec> tangent_basis(const UnitVector& x);

// Orthonormal basis of T_x S^d whose first vector is `first` (unit, tangent at x).
std::vector<Vec> tangent_basis(const UnitVector& x, const Vec& first);

enum class CurveKind { GreatCircle, LatitudeCircle, GreatSubsphere };

// A closed curve on S^2 (or a great 2-sphere inside S^3), stored by kind and
// orthonormal frame. Curves are arc-length parametrized on [0, length()).
//
// Frame conventions (e, f, p):
//   GreatCircle     gamma(s) = cos(s) e + sin(s) f,           normal p = e x f
//   LatitudeCircle  gamma(s) = sin(t0)(cos(s/sin t0) e + sin(s/sin t0) f) + cos(t0) p
//   GreatSubsphere  x(theta, phi) = sin(theta)(cos(phi) e + sin(phi) f) + cos(theta) p  in R^4
class CurveSpec {
public:
    static CurveSpec great_circle(const UnitVector& origin, const Vec& direction);
    static CurveSpec equator();
    static CurveSpec latitude(double colatitude);
    static CurveSpec latitude(double colatitude, const UnitVector& pole, const Vec& meridian);
    static CurveSpec great_subsphere();
    static CurveSpec great_subsphere(const Vec& e, const Vec& f, const Vec& p);

    CurveKind kind() const { return kind_; }
    // 1 for curves, 2 for the great 2-sphere in S^3.
    int dimension() const { return kind_ == CurveKind::GreatSubsphere ? 2 : 1; }
    int ambient_dim() const { return frame_[0].dim(); }
    double colatitude() const { return colatitude_; }
    // Arc length for curves, area for the subsphere.
    double measure() const;
    const std::array<Vec, 3>& frame() const { return frame_; }
    std::string describe() const;

private:
    CurveSpec(CurveKind kind, double colatitude, std::array<Vec, 3> frame)
        : kind_(kind), colatitude_(colatitude), frame_(frame) {}

    CurveKind kind_;
    double colatitude_;
    std::array<Vec, 3> frame_;
};

// Point at arc length s (wrapped modulo the length). Curves only.
UnitVector curve_point(const CurveSpec& c, double s);
// Unit tangent gamma'(s).
Vec curve_tangent(const CurveSpec& c, double s);
// |D/ds gamma'|: tangential part of the ambient acceleration.
double geodesic_curvature(const CurveSpec& c, double s);
// Point of the great subsphere at spherical angles (theta, phi) of its frame.
UnitVector subsphere_point(const CurveSpec& c, double theta, double phi);

// |grad_x(-d(x, exp_{x'}(r omega)))|_{x=x'} - omega| by central differences
// (step h) in normal coordinates at x'. Requires r away from 0 and pi.
double distance_gradient_check(const UnitVector& base, double r, const Vec& omega, double h = 1e-5);

// Quadrature nodes and positive weights realizing the Riemannian measure.
//
// Sphere(2, R): Gauss-Legendre in cos(theta) with R nodes x 2R uniform in phi.
// Sphere(3, R): Hopf coordinates x = (sqrt(u) e^{i beta}, sqrt(1-u) e^{i gamma}),
//               Gauss-Legendre in u in [0,1] with max(2, R/4) nodes x R x R uniform angles.
// Curve(c, N):  N uniform arc-length nodes, weight L/N. For a great subsphere,
//               N is the resolution of the embedded S^2 grid.
// Exact for polynomials of degree <= R/2 on S^2 and S^3.
class QuadratureGrid {
public:
    enum class Layout { Sphere2, Sphere3, Curve, Subsphere };

    Layout layout() const { return layout_; }
    std::size_t size() const;
    int resolution() const { return resolution_; }
    int sphere_dim() const;
    UnitVector node(std::size_t i) const;
    double weight(std::size_t i) const;
    // Curve layouts only.
    double arc_length(std::size_t i) const;
    double total_weight() const;

    template <class F>
    void for_each(F&& f) const {
        const std::size_t n = size();
        for (std::size_t i = 0; i < n; ++i) f(node(i), weight(i));
    }

private:
    friend QuadratureGrid build_sphere_grid(int, int);
    friend QuadratureGrid build_curve_grid(const CurveSpec&, int);

    QuadratureGrid() = default;

    Layout layout_ = Layout::Curve;
    int resolution_ = 0;
    // Polar factor: Gauss-Legendre abscissae (cos(theta) or u) and weights.
    std::vector<double> polar_nodes_;
    std::vector<double> polar_weights_;
    int n_phi_ = 0;
    int n_gamma_ = 0;
    std::vector<double> cos_phi_, sin_phi_, cos_gamma_, sin_gamma_;
    // Curve layouts.
    std::optional<CurveSpec> curve_;
    double spacing_ = 0.0;
};

struct SphereTarget {
    int d;
    int resolution;
};

struct CurveTarget {
    CurveSpec curve;
    int points;
};

using GridTarget = std::variant<SphereTarget, CurveTarget>;

QuadratureGrid build_sphere_grid(int d, int resolution);
QuadratureGrid build_curve_grid(const CurveSpec& c, int points);
QuadratureGrid build_grid(const GridTarget& target);

// |S^d| for d = 1, 2, 3.
double sphere_area(int d);

}  // namespace eigenrestrict
