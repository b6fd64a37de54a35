#pragma once

#include "eigenrestrict/harmonics.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace eigenrestrict {

struct CircleRepresentations {
    long long N;
    std::vector<std::pair<int, int>> points;  // sorted lexicographically
    bool degenerate;                          // N == 0: the single point (0, 0)

    std::size_t count() const { return points.size(); }
};

// All (m, n) with m^2 + n^2 = N by an O(sqrt N) scan.
CircleRepresentations representations(long long N);

// r2(N) for 0 <= N <= n_max by enumerating the lattice points of the disk of radius sqrt(n_max).
std::vector<int> r2_table(long long n_max);

struct DivisorRow {
    long long N;
    int r2;
    double exponent;  // log r2 / log sqrt(N); 0 when r2 == 0
};

struct TailMaximum {
    long long cutoff;
    long long argmax;
    double exponent;  // max over N in [cutoff, n_max]
};

struct DivisorGrowth {
    long long n_max;
    std::vector<DivisorRow> records;  // rows where r2 reaches a new running maximum
    std::vector<TailMaximum> tails;   // cutoffs 10^3, 10^4, ... strictly below n_max
    bool decreasing;                  // tail maxima strictly decrease with the cutoff
};

// n_max in [2, 10^7].
DivisorGrowth divisor_growth(long long n_max);

// Unimodular coefficients with seeded uniform phases, normalized to unit L^2 norm.
TorusSum random_eigenfunction(long long N, std::uint64_t seed);
// All coefficients equal to 1/sqrt(r2(N)).
TorusSum zero_phase_eigenfunction(long long N);

// Minimal grid per axis for sup norms: ceil(20 sqrt(N)).
int torus_grid_floor(long long N);

struct SupNorm {
    double value;           // max |f| on the doubled 2M x 2M grid
    double coarse;          // max |f| on the M x M grid
    double relative_change;
};

// Sup norm on the uniform M x M grid of [0, 2pi)^2 with one doubling. Throws if M is below the floor.
SupNorm torus_sup_norm(const TorusSum& f, int M);

// (mean of |f|^2 over the uniform M x M grid)^{1/2}; equals l2_norm() when M > 2 sqrt(N).
double torus_grid_l2(const TorusSum& f, int M);

// (1/|gamma| int_gamma |f|^2)^{1/2} maximized over the closed lines (t, alpha t), alpha in {0, 1, 1/2},
// and the unit circle about (pi, pi).
double torus_curve_l2(const TorusSum& f);

struct TorusRow {
    long long N;
    int r2;
    double sup;
    double curve_l2;
    std::uint64_t seed;
};

struct TorusReport {
    std::vector<TorusRow> rows;
    bool sup_bound_holds;  // sup <= sqrt(r2) for every row
    double sup_slope;      // log(mean sup over seeds) against log sqrt(N)
    double curve_slope;    // same for the curve L^2 norms
};

// Needs at least 2 distinct N (4 for a meaningful slope); every N must have r2(N) > 0.
TorusReport verify_linfty_bound(std::span<const long long> Ns, std::span<const std::uint64_t> seeds,
                                int grid_factor = 20);

}  // namespace eigenrestrict
