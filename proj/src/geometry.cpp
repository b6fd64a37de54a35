#include "eigenrestrict/geometry.hpp"

#include "eigenrestrict/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace eigenrestrict {

namespace {

constexpr double kPi = std::numbers::pi;

void require_same_dim(const Vec& a, const Vec& b, const char* what) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()) + ")");
    }
}

void require_orthonormal(const std::array<Vec, 3>& frame) {
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            const double expected = i == j ? 1.0 : 0.0;
            if (std::abs(dot(frame[i], frame[j]) - expected) > kTangentTolerance) {
                throw std::invalid_argument("CurveSpec: frame is not orthonormal");
            }
        }
    }
}

}  // namespace

Vec::Vec(std::initializer_list<double> values) {
    if (values.size() > static_cast<std::size_t>(kMaxAmbient)) {
        throw std::invalid_argument("Vec: at most 4 components supported");
    }
    std::copy(values.begin(), values.end(), c_.begin());
    dim_ = static_cast<int>(values.size());
}

Vec Vec::zeros(int dim) {
    if (dim < 1 || dim > kMaxAmbient) throw std::invalid_argument("Vec: unsupported dimension");
    Vec v;
    v.dim_ = dim;
    return v;
}

Vec Vec::basis(int dim, int axis) {
    Vec v = zeros(dim);
    if (axis < 0 || axis >= dim) throw std::invalid_argument("Vec::basis: axis out of range");
    v[axis] = 1.0;
    return v;
}

Vec& Vec::operator+=(const Vec& o) {
    require_same_dim(*this, o, "Vec::operator+=");
    for (int i = 0; i < dim_; ++i) (*this)[i] += o[i];
    return *this;
}

Vec& Vec::operator-=(const Vec& o) {
    require_same_dim(*this, o, "Vec::operator-=");
    for (int i = 0; i < dim_; ++i) (*this)[i] -= o[i];
    return *this;
}

Vec& Vec::operator*=(double s) {
    for (int i = 0; i < dim_; ++i) (*this)[i] *= s;
    return *this;
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator*(double s, Vec a) { return a *= s; }

double dot(const Vec& a, const Vec& b) {
    require_same_dim(a, b, "dot");
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * a[i];
    return std::sqrt(s);
}

Vec cross(const Vec& a, const Vec& b) {
    if (a.dim() != 3 || b.dim() != 3) throw std::invalid_argument("cross: R^3 only");
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

UnitVector::UnitVector(const Vec& v) : v_(v) {
    if (v.dim() < 3) throw std::invalid_argument("UnitVector: need ambient dimension >= 3");
    const double n = norm(v);
    if (std::abs(n - 1.0) > kUnitTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "UnitVector: norm " << n << " differs from 1 by more than 1e-12";
        throw std::invalid_argument(msg.str());
    }
}

UnitVector UnitVector::normalize(Vec v) {
    const double n = norm(v);
    if (!(n > 1e-300)) throw std::invalid_argument("UnitVector::normalize: zero vector");
    if (v.dim() < 3) throw std::invalid_argument("UnitVector: need ambient dimension >= 3");
    v *= 1.0 / n;
    return UnitVector(v, Unchecked{});
}

UnitVector UnitVector::operator-() const { return UnitVector(-1.0 * v_, Unchecked{}); }

double sphere_distance(const UnitVector& x, const UnitVector& y) {
    require_same_dim(x.vec(), y.vec(), "sphere_distance");
    // 2 atan2(|x - y|, |x + y|) keeps full relative accuracy for nearly
    // coincident and nearly antipodal points, unlike arccos of the inner product.
    double minus = 0.0, plus = 0.0;
    for (int i = 0; i < x.ambient_dim(); ++i) {
        const double a = x[i] - y[i], b = x[i] + y[i];
        minus += a * a;
        plus += b * b;
    }
    return 2.0 * std::atan2(std::sqrt(minus), std::sqrt(plus));
}

UnitVector exp_map(const UnitVector& x, const Vec& v) {
    require_same_dim(x.vec(), v, "exp_map");
    if (std::abs(dot(x.vec(), v)) > kTangentTolerance) {
        throw std::invalid_argument("exp_map: vector is not tangent at the base point");
    }
    const double len = norm(v);
    if (len == 0.0) return x;
    return UnitVector::normalize(std::cos(len) * x.vec() + (std::sin(len) / len) * v);
}

Vec tangent_toward(const UnitVector& from, const UnitVector& to) {
    require_same_dim(from.vec(), to.vec(), "tangent_toward");
    Vec w = to.vec() - dot(to.vec(), from.vec()) * from.vec();
    const double n = norm(w);
    if (n < 1e-15) throw std::domain_error("tangent_toward: points coincide or are antipodal");
    return (1.0 / n) * w;
}

namespace {

std::vector<Vec> complete_basis(const UnitVector& x, std::vector<Vec> basis) {
    const int dim = x.ambient_dim();
    std::vector<int> axes(static_cast<std::size_t>(dim));
    std::iota(axes.begin(), axes.end(), 0);
    std::stable_sort(axes.begin(), axes.end(), [&](int a, int b) { return std::abs(x[a]) < std::abs(x[b]); });
    for (int axis : axes) {
        if (static_cast<int>(basis.size()) == dim - 1) break;
        Vec w = Vec::basis(dim, axis);
        w -= dot(w, x.vec()) * x.vec();
        for (const auto& b : basis) w -= dot(w, b) * b;
        const double n = norm(w);
        if (n < 1e-6) continue;
        basis.push_back((1.0 / n) * w);
    }
    return basis;
}

}  // namespace

std::vector<Vec> tangent_basis(const UnitVector& x) { return complete_basis(x, {}); }

std::vector<Vec> tangent_basis(const UnitVector& x, const Vec& first) {
    require_same_dim(x.vec(), first, "tangent_basis");
    if (std::abs(dot(x.vec(), first)) > kTangentTolerance || std::abs(norm(first) - 1.0) > kTangentTolerance) {
        throw std::invalid_argument("tangent_basis: first vector must be a unit tangent");
    }
    return complete_basis(x, {first});
}

CurveSpec CurveSpec::great_circle(const UnitVector& origin, const Vec& direction) {
    if (origin.ambient_dim() != 3) throw std::invalid_argument("great_circle: S^2 only");
    std::array<Vec, 3> frame{origin.vec(), direction, cross(origin.vec(), direction)};
    require_orthonormal(frame);
    return CurveSpec(CurveKind::GreatCircle, kPi / 2, frame);
}

CurveSpec CurveSpec::equator() {
    return CurveSpec(CurveKind::GreatCircle, kPi / 2, {Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0, 0, 1}});
}

CurveSpec CurveSpec::latitude(double colatitude) {
    return latitude(colatitude, UnitVector{0, 0, 1}, Vec{1, 0, 0});
}

CurveSpec CurveSpec::latitude(double colatitude, const UnitVector& pole, const Vec& meridian) {
    if (!(colatitude > 0.0 && colatitude <= kPi / 2 + 1e-15)) {
        throw std::invalid_argument("latitude: colatitude must lie in (0, pi/2]");
    }
    if (pole.ambient_dim() != 3) throw std::invalid_argument("latitude: S^2 only");
    std::array<Vec, 3> frame{meridian, cross(pole.vec(), meridian), pole.vec()};
    require_orthonormal(frame);
    return CurveSpec(CurveKind::LatitudeCircle, colatitude, frame);
}

CurveSpec CurveSpec::great_subsphere() {
    return great_subsphere(Vec{1, 0, 0, 0}, Vec{0, 1, 0, 0}, Vec{0, 0, 1, 0});
}

CurveSpec CurveSpec::great_subsphere(const Vec& e, const Vec& f, const Vec& p) {
    if (e.dim() != 4 || f.dim() != 4 || p.dim() != 4) {
        throw std::invalid_argument("great_subsphere: frame must live in R^4");
    }
    std::array<Vec, 3> frame{e, f, p};
    require_orthonormal(frame);
    return CurveSpec(CurveKind::GreatSubsphere, kPi / 2, frame);
}

double CurveSpec::measure() const {
    switch (kind_) {
        case CurveKind::GreatCircle: return 2 * kPi;
        case CurveKind::LatitudeCircle: return 2 * kPi * std::sin(colatitude_);
        case CurveKind::GreatSubsphere: return 4 * kPi;
    }
    return 0.0;
}

std::string CurveSpec::describe() const {
    std::ostringstream out;
    out.precision(17);
    switch (kind_) {
        case CurveKind::GreatCircle: out << "great-circle"; break;
        case CurveKind::LatitudeCircle: out << "latitude:" << colatitude_; break;
        case CurveKind::GreatSubsphere: out << "great-subsphere"; break;
    }
    return out.str();
}

namespace {

void require_curve(const CurveSpec& c, const char* what) {
    if (c.kind() == CurveKind::GreatSubsphere) {
        throw std::invalid_argument(std::string(what) + ": not defined for a 2-dimensional subsphere");
    }
}

// Angle along the circle and its radius for arc length s.
std::pair<double, double> circle_angle(const CurveSpec& c, double s) {
    const double radius = c.kind() == CurveKind::GreatCircle ? 1.0 : std::sin(c.colatitude());
    return {s / radius, radius};
}

}  // namespace

UnitVector curve_point(const CurveSpec& c, double s) {
    require_curve(c, "curve_point");
    const double length = c.measure();
    s = std::fmod(s, length);
    if (s < 0) s += length;
    const auto [a, radius] = circle_angle(c, s);
    const auto& [e, f, p] = c.frame();
    Vec v = radius * (std::cos(a) * e + std::sin(a) * f);
    if (c.kind() == CurveKind::LatitudeCircle) v += std::cos(c.colatitude()) * p;
    return UnitVector::normalize(v);
}

Vec curve_tangent(const CurveSpec& c, double s) {
    require_curve(c, "curve_tangent");
    const auto [a, radius] = circle_angle(c, s);
    const auto& [e, f, p] = c.frame();
    return -std::sin(a) * e + std::cos(a) * f;
}

double geodesic_curvature(const CurveSpec& c, double s) {
    require_curve(c, "geodesic_curvature");
    const auto [a, radius] = circle_angle(c, s);
    const auto& [e, f, p] = c.frame();
    const Vec acceleration = (-1.0 / radius) * (std::cos(a) * e + std::sin(a) * f);
    const Vec x = curve_point(c, s).vec();
    return norm(acceleration - dot(acceleration, x) * x);
}

UnitVector subsphere_point(const CurveSpec& c, double theta, double phi) {
    if (c.kind() != CurveKind::GreatSubsphere) throw std::invalid_argument("subsphere_point: subsphere only");
    const auto& [e, f, p] = c.frame();
    return UnitVector::normalize(std::sin(theta) * (std::cos(phi) * e + std::sin(phi) * f) + std::cos(theta) * p);
}

double distance_gradient_check(const UnitVector& base, double r, const Vec& omega, double h) {
    if (!(r > 100 * h && r < kPi - 100 * h)) {
        throw std::domain_error("distance_gradient_check: r too close to 0 or pi (distance not smooth)");
    }
    if (std::abs(norm(omega) - 1.0) > kTangentTolerance) {
        throw std::invalid_argument("distance_gradient_check: omega must be a unit vector");
    }
    const UnitVector target = exp_map(base, r * omega);
    const auto basis = tangent_basis(base);
    Vec grad = Vec::zeros(base.ambient_dim());
    for (const auto& b : basis) {
        const double forward = -sphere_distance(exp_map(base, h * b), target);
        const double backward = -sphere_distance(exp_map(base, -h * b), target);
        grad += ((forward - backward) / (2 * h)) * b;
    }
    return norm(grad - omega);
}

double sphere_area(int d) {
    switch (d) {
        case 1: return 2 * kPi;
        case 2: return 4 * kPi;
        case 3: return 2 * kPi * kPi;
    }
    throw std::invalid_argument("sphere_area: unsupported dimension");
}

QuadratureGrid build_sphere_grid(int d, int resolution) {
    if (resolution < 4) throw std::invalid_argument("build_grid: resolution must be >= 4");
    QuadratureGrid g;
    g.resolution_ = resolution;
    auto fill_angles = [](int n, std::vector<double>& c, std::vector<double>& s) {
        c.resize(static_cast<std::size_t>(n));
        s.resize(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            const double a = 2 * kPi * k / n;
            c[static_cast<std::size_t>(k)] = std::cos(a);
            s[static_cast<std::size_t>(k)] = std::sin(a);
        }
    };
    if (d == 2) {
        g.layout_ = QuadratureGrid::Layout::Sphere2;
        auto rule = gauss_legendre(resolution);
        g.polar_nodes_ = std::move(rule.nodes);
        g.polar_weights_ = std::move(rule.weights);
        g.n_phi_ = 2 * resolution;
        g.n_gamma_ = 1;
        fill_angles(g.n_phi_, g.cos_phi_, g.sin_phi_);
    } else if (d == 3) {
        g.layout_ = QuadratureGrid::Layout::Sphere3;
        auto rule = gauss_legendre(std::max(2, resolution / 4), 0.0, 1.0);
        g.polar_nodes_ = std::move(rule.nodes);
        g.polar_weights_ = std::move(rule.weights);
        g.n_phi_ = resolution;
        g.n_gamma_ = resolution;
        fill_angles(g.n_phi_, g.cos_phi_, g.sin_phi_);
        fill_angles(g.n_gamma_, g.cos_gamma_, g.sin_gamma_);
    } else {
        throw std::invalid_argument("build_grid: unsupported sphere dimension " + std::to_string(d));
    }
    return g;
}

QuadratureGrid build_curve_grid(const CurveSpec& c, int points) {
    if (points < 4) throw std::invalid_argument("build_grid: need at least 4 points");
    if (c.kind() == CurveKind::GreatSubsphere) {
        QuadratureGrid g = build_sphere_grid(2, points);
        g.layout_ = QuadratureGrid::Layout::Subsphere;
        g.curve_ = c;
        return g;
    }
    QuadratureGrid g;
    g.layout_ = QuadratureGrid::Layout::Curve;
    g.resolution_ = points;
    g.curve_ = c;
    g.spacing_ = c.measure() / points;
    return g;
}

QuadratureGrid build_grid(const GridTarget& target) {
    return std::visit(
        [](const auto& t) -> QuadratureGrid {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, SphereTarget>) {
                return build_sphere_grid(t.d, t.resolution);
            } else {
                return build_curve_grid(t.curve, t.points);
            }
        },
        target);
}

std::size_t QuadratureGrid::size() const {
    if (layout_ == Layout::Curve) return static_cast<std::size_t>(resolution_);
    return polar_nodes_.size() * static_cast<std::size_t>(n_phi_) * static_cast<std::size_t>(n_gamma_);
}

int QuadratureGrid::sphere_dim() const {
    switch (layout_) {
        case Layout::Sphere2: return 2;
        case Layout::Sphere3: return 3;
        case Layout::Curve: return 1;
        case Layout::Subsphere: return 2;
    }
    return 0;
}

UnitVector QuadratureGrid::node(std::size_t i) const {
    if (layout_ == Layout::Curve) return curve_point(*curve_, static_cast<double>(i) * spacing_);
    const auto nphi = static_cast<std::size_t>(n_phi_), ngam = static_cast<std::size_t>(n_gamma_);
    const std::size_t l = i % ngam;
    const std::size_t k = (i / ngam) % nphi;
    const std::size_t j = i / (ngam * nphi);
    const double t = polar_nodes_[j];
    if (layout_ == Layout::Sphere3) {
        const double a = std::sqrt(t), b = std::sqrt(1.0 - t);
        return UnitVector::normalize(
            Vec{a * cos_phi_[k], a * sin_phi_[k], b * cos_gamma_[l], b * sin_gamma_[l]});
    }
    const double s = std::sqrt(1.0 - t * t);
    if (layout_ == Layout::Subsphere) {
        const auto& [e, f, p] = curve_->frame();
        return UnitVector::normalize(s * (cos_phi_[k] * e + sin_phi_[k] * f) + t * p);
    }
    return UnitVector::normalize(Vec{s * cos_phi_[k], s * sin_phi_[k], t});
}

double QuadratureGrid::weight(std::size_t i) const {
    if (layout_ == Layout::Curve) return spacing_;
    const auto nphi = static_cast<std::size_t>(n_phi_), ngam = static_cast<std::size_t>(n_gamma_);
    const std::size_t j = i / (ngam * nphi);
    if (layout_ == Layout::Sphere3) {
        return 0.5 * polar_weights_[j] * (2 * kPi / n_phi_) * (2 * kPi / n_gamma_);
    }
    return polar_weights_[j] * (2 * kPi / n_phi_);
}

double QuadratureGrid::arc_length(std::size_t i) const {
    if (layout_ != Layout::Curve) throw std::logic_error("arc_length: curve grids only");
    return static_cast<double>(i) * spacing_;
}

double QuadratureGrid::total_weight() const {
    if (layout_ == Layout::Curve) return spacing_ * resolution_;
    const double polar = std::accumulate(polar_weights_.begin(), polar_weights_.end(), 0.0);
    if (layout_ == Layout::Sphere3) return 0.5 * polar * 4 * kPi * kPi;
    return polar * 2 * kPi;
}

}  // namespace eigenrestrict
