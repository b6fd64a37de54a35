#pragma once

#include "eigenrestrict/geometry.hpp"
#include "eigenrestrict/harmonics.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace eigenrestrict {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct NormSample {
    int n;
    double lambda;
    double p;
    double restricted_norm;
    double ambient_norm;
    double ratio;
};

enum class Verdict { Pass, Fail, NoContract };
std::string to_string(Verdict v);

struct PowerLawFit {
    double slope;
    double intercept;
    double residual;  // RMS of the log-space residuals
};

struct ExponentFit {
    double slope;
    double intercept;
    double residual;
    double theoretical;
    double tolerance;  // NaN when no contract applies
    Verdict verdict;
};

// Least squares of log(y) against log(x); needs >= 2 points with x, y > 0.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

// Fits log(ratio) against log(lambda) over >= 4 samples. Pass iff |slope - theoretical| <= tolerance.
// A missing tolerance, or a log endpoint, yields NoContract.
ExponentFit fit_exponent(std::span<const NormSample> samples, double theoretical, std::optional<double> tolerance,
                         bool log_endpoint = false);

struct TheoreticalExponent {
    double value;
    bool log_endpoint;
};

// Growth exponent of ||phi||_{L^p(Sigma^k)} / ||phi||_{L^2(S^d)} for k-dimensional submanifolds.
// `curved` selects the improved exponent for curves with nonvanishing geodesic curvature on surfaces.
TheoreticalExponent theoretical_exponent(int d, int k, double p, bool curved = false);

// Smallest admissible curve grid for an eigenfunction of frequency lambda: max(4096, ceil(20 lambda)).
int curve_grid_floor(double lambda);
// Smallest admissible resolution of an S^2 / S^3 grid for degree n: 2n + 16.
int manifold_resolution_floor(int n);

// L^p norm of f along c. For curves: periodic trapezoid on N uniform nodes, or, for p = infinity, the
// grid maximum refined around the largest local maxima. For a great 2-sphere: the S^2 product grid of
// resolution N. Throws if N is below the floor for f.lambda.
double lp_norm_on_curve(const SphereEigenfunction& f, const CurveSpec& c, double p, int N);

struct CheckedNorm {
    double value;
    double doubled;          // same norm with the grid doubled
    double relative_change;  // |doubled - value| / value
};

// lp_norm_on_curve plus one grid doubling; throws std::runtime_error if the change exceeds `tolerance`.
CheckedNorm lp_norm_on_curve_checked(const SphereEigenfunction& f, const CurveSpec& c, double p, int N,
                                     double tolerance = 1e-5);

double l2_norm_on_manifold(const std::function<Complex(const UnitVector&)>& f, const QuadratureGrid& grid);
// Same, enforcing the resolution floor for f.degree.
double l2_norm_on_manifold(const SphereEigenfunction& f, const QuadratureGrid& grid);

using FamilyTemplate = std::function<HarmonicSpec(int n)>;

FamilyTemplate highest_weight_family(int d);
FamilyTemplate zonal_family(int d, const UnitVector& pole);
FamilyTemplate averaged_family(double delta);

struct SweepOptions {
    int curve_points = 0;        // 0: use the floor for each degree
    int ambient_resolution = 0;  // 0: manifold_resolution_floor(n)
    bool check_convergence = true;
};

// One NormSample per degree; degrees strictly increasing, at least 4 of them.
std::vector<NormSample> sweep(const FamilyTemplate& family, const CurveSpec& c, double p,
                              std::span<const int> degrees, const SweepOptions& options = {});

struct TurningPointResult {
    std::vector<NormSample> samples;
    std::vector<int> best_order;  // maximizing m per degree
};

// For each n, the largest L^2 norm of Y_n^m (m in [n/2, n]) on the latitude circle of colatitude theta0.
TurningPointResult turning_point_sweep(double colatitude, std::span<const int> degrees,
                                       const SweepOptions& options = {});

struct EnvelopeCheck {
    double exponent;       // delta + margin
    double constant;       // C, anchored at the first sample
    double worst_excess;   // max_i ratio_i / (C lambda_i^exponent)
    std::size_t worst_index;
    bool holds;
};

// ratio(n) <= C lambda^{delta + margin} with C fixed by the first sample.
EnvelopeCheck check_envelope(std::span<const NormSample> samples, double delta, double margin = 0.02);

// Geometric degree ladder from `lo` to `hi` with ratio sqrt(2), rounded to the nearest integer.
std::vector<int> geometric_degrees(int lo, int hi);

}  // namespace eigenrestrict
