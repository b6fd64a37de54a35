#include "eigenrestrict/torus.hpp"

#include "eigenrestrict/restriction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace eigenrestrict {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

long long isqrt(long long n) {
    auto r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

CircleRepresentations representations(long long N) {
    if (N < 0) throw std::invalid_argument("representations: N must be nonnegative");
    if (N == 0) return {0, {{0, 0}}, true};
    CircleRepresentations out{N, {}, false};
    const long long root = isqrt(N);
    for (long long m = -root; m <= root; ++m) {
        const long long rest = N - m * m;
        const long long n = isqrt(rest);
        if (n * n != rest) continue;
        out.points.emplace_back(static_cast<int>(m), static_cast<int>(-n));
        if (n != 0) out.points.emplace_back(static_cast<int>(m), static_cast<int>(n));
    }
    return out;
}

std::vector<int> r2_table(long long n_max) {
    if (n_max < 0) throw std::invalid_argument("r2_table: n_max must be nonnegative");
    std::vector<int> table(static_cast<std::size_t>(n_max) + 1, 0);
    const long long root = isqrt(n_max);
    for (long long m = -root; m <= root; ++m) {
        const long long span = isqrt(n_max - m * m);
        for (long long n = -span; n <= span; ++n) ++table[static_cast<std::size_t>(m * m + n * n)];
    }
    return table;
}

DivisorGrowth divisor_growth(long long n_max) {
    if (n_max < 2 || n_max > 10'000'000) throw std::invalid_argument("divisor_growth: need 2 <= n_max <= 10^7");
    const std::vector<int> r2 = r2_table(n_max);
    auto exponent = [&](long long N) {
        const int r = r2[static_cast<std::size_t>(N)];
        return r == 0 ? 0.0 : std::log(static_cast<double>(r)) / std::log(std::sqrt(static_cast<double>(N)));
    };
    DivisorGrowth out{n_max, {}, {}, true};
    int best = 0;
    for (long long N = 1; N <= n_max; ++N) {
        const int r = r2[static_cast<std::size_t>(N)];
        if (r > best) {
            best = r;
            out.records.push_back({N, r, N >= 2 ? exponent(N) : 0.0});
        }
    }
    // Suffix maxima of the exponent, read off at each power-of-ten cutoff.
    std::vector<long long> cutoffs;
    for (long long c = 1000; c < n_max; c *= 10) cutoffs.push_back(c);
    double tail = 0.0;
    long long arg = n_max;
    for (auto it = cutoffs.rbegin(); it != cutoffs.rend(); ++it) {
        const long long upper = (it == cutoffs.rbegin()) ? n_max : *(it - 1) - 1;
        for (long long N = upper; N >= *it; --N) {
            const double e = exponent(N);
            if (e > tail) {
                tail = e;
                arg = N;
            }
        }
        out.tails.push_back({*it, arg, tail});
    }
    std::reverse(out.tails.begin(), out.tails.end());
    for (std::size_t i = 1; i < out.tails.size(); ++i) {
        if (!(out.tails[i].exponent < out.tails[i - 1].exponent)) out.decreasing = false;
    }
    return out;
}

TorusSum random_eigenfunction(long long N, std::uint64_t seed) {
    const auto reps = representations(N);
    if (reps.degenerate || reps.count() == 0) {
        throw std::invalid_argument("random_eigenfunction: N = " + std::to_string(N) + " has no lattice points (r2 = 0)");
    }
    std::mt19937_64 rng(seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(reps.count()));
    std::vector<LatticePoint> terms;
    for (const auto& [m, n] : reps.points) {
        const double theta = kTwoPi * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
        terms.push_back({m, n, std::polar(scale, theta)});
    }
    return TorusSum(std::move(terms));
}

TorusSum zero_phase_eigenfunction(long long N) {
    const auto reps = representations(N);
    if (reps.degenerate || reps.count() == 0) {
        throw std::invalid_argument("zero_phase_eigenfunction: N = " + std::to_string(N) + " has no lattice points");
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(reps.count()));
    std::vector<LatticePoint> terms;
    for (const auto& [m, n] : reps.points) terms.push_back({m, n, scale});
    return TorusSum(std::move(terms));
}

int torus_grid_floor(long long N) {
    return std::max(4, static_cast<int>(std::ceil(20.0 * std::sqrt(static_cast<double>(N)))));
}

namespace {

// |f|^2 on the M x M grid, evaluated separably: f(x, y) = sum_m e^{imx} g_m(y).
template <class Visit>
void visit_grid(const TorusSum& f, int M, Visit&& visit) {
    std::map<int, std::vector<const LatticePoint*>> by_m;
    for (const auto& p : f.terms()) by_m[p.m].push_back(&p);
    const auto size = static_cast<std::size_t>(M);
    std::vector<std::vector<Complex>> ex, gy;
    for (const auto& [m, pts] : by_m) {
        std::vector<Complex> e(size), g(size, 0.0);
        for (std::size_t i = 0; i < size; ++i) {
            const double x = kTwoPi * static_cast<double>(i) / M;
            e[i] = std::polar(1.0, m * x);
            for (const auto* p : pts) g[i] += p->coefficient * std::polar(1.0, p->n * x);
        }
        ex.push_back(std::move(e));
        gy.push_back(std::move(g));
    }
    std::vector<Complex> row(size);
    for (std::size_t i = 0; i < size; ++i) {
        std::fill(row.begin(), row.end(), Complex(0.0));
        for (std::size_t k = 0; k < ex.size(); ++k) {
            const Complex e = ex[k][i];
            const Complex* g = gy[k].data();
            for (std::size_t j = 0; j < size; ++j) row[j] += e * g[j];
        }
        for (std::size_t j = 0; j < size; ++j) visit(i, j, std::norm(row[j]));
    }
}

}  // namespace

SupNorm torus_sup_norm(const TorusSum& f, int M) {
    const int floor = torus_grid_floor(f.radius_squared());
    if (M < floor) {
        throw std::invalid_argument("torus_sup_norm: grid " + std::to_string(M) + " under-resolved; need M >= " +
                                    std::to_string(floor));
    }
    double fine = 0.0, coarse = 0.0;
    visit_grid(f, 2 * M, [&](std::size_t i, std::size_t j, double v) {
        fine = std::max(fine, v);
        if (i % 2 == 0 && j % 2 == 0) coarse = std::max(coarse, v);
    });
    fine = std::sqrt(fine);
    coarse = std::sqrt(coarse);
    return {fine, coarse, fine > 0.0 ? (fine - coarse) / fine : 0.0};
}

double torus_grid_l2(const TorusSum& f, int M) {
    if (M < 1) throw std::invalid_argument("torus_grid_l2: M must be positive");
    double sum = 0.0;
    visit_grid(f, M, [&](std::size_t, std::size_t, double v) { sum += v; });
    return std::sqrt(sum / (static_cast<double>(M) * M));
}

namespace {

// RMS of f along a closed curve with constant speed over [0, period), periodic trapezoid rule.
template <class Curve>
double curve_rms(const TorusSum& f, double period, Curve&& curve) {
    const double root = std::sqrt(static_cast<double>(f.radius_squared()));
    const int nodes = 64 + static_cast<int>(std::ceil(20.0 * root * period / kTwoPi));
    double sum = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const auto [x, y] = curve(period * k / nodes);
        sum += std::norm(eval_torus(f, x, y));
    }
    return std::sqrt(sum / nodes);
}

}  // namespace

double torus_curve_l2(const TorusSum& f) {
    double best = 0.0;
    // Slope alpha = p/q closes after x advances by 2pi q.
    const std::pair<double, double> slopes[] = {{0.0, 1.0}, {1.0, 1.0}, {0.5, 2.0}};
    for (const auto& [alpha, q] : slopes) {
        best = std::max(best, curve_rms(f, kTwoPi * q, [alpha](double t) { return std::pair{t, alpha * t}; }));
    }
    const double pi = std::numbers::pi;
    best = std::max(best, curve_rms(f, kTwoPi, [pi](double t) {
                        return std::pair{pi + std::cos(t), pi + std::sin(t)};
                    }));
    return best;
}

TorusReport verify_linfty_bound(std::span<const long long> Ns, std::span<const std::uint64_t> seeds, int grid_factor) {
    if (Ns.empty() || seeds.empty()) throw std::invalid_argument("verify_linfty_bound: need N values and seeds");
    if (grid_factor < 20) throw std::invalid_argument("verify_linfty_bound: grid factor must be >= 20");
    TorusReport report{{}, true, 0.0, 0.0};
    std::vector<double> roots, mean_sup, mean_curve;
    for (long long N : Ns) {
        double sup_sum = 0.0, curve_sum = 0.0;
        const int M = std::max(torus_grid_floor(N),
                               static_cast<int>(std::ceil(grid_factor * std::sqrt(static_cast<double>(N)))));
        for (std::uint64_t seed : seeds) {
            const TorusSum f = random_eigenfunction(N, seed);
            const int r2 = static_cast<int>(f.terms().size());
            const double sup = torus_sup_norm(f, M).value;
            const double curve = torus_curve_l2(f);
            if (sup > std::sqrt(static_cast<double>(r2)) * (1.0 + 1e-12)) report.sup_bound_holds = false;
            report.rows.push_back({N, r2, sup, curve, seed});
            sup_sum += sup;
            curve_sum += curve;
        }
        roots.push_back(std::sqrt(static_cast<double>(N)));
        mean_sup.push_back(sup_sum / static_cast<double>(seeds.size()));
        mean_curve.push_back(curve_sum / static_cast<double>(seeds.size()));
    }
    if (roots.size() >= 2) {
        report.sup_slope = fit_power_law(roots, mean_sup).slope;
        report.curve_slope = fit_power_law(roots, mean_curve).slope;
    }
    return report;
}

}  // namespace eigenrestrict
