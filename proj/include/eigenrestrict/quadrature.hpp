#pragma once

#include <vector>

namespace eigenrestrict {

struct GaussLegendreRule {
    std::vector<double> nodes;    // ascending, in (-1, 1)
    std::vector<double> weights;  // positive, sum to 2
};

// n-point Gauss-Legendre rule on [-1, 1] (Newton on the three-term recurrence).
GaussLegendreRule gauss_legendre(int n);

// Same rule mapped affinely onto [a, b].
GaussLegendreRule gauss_legendre(int n, double a, double b);

// C^infinity bump exp(1 - 1/(1 - u^2)) on (-1, 1): peak value 1 at u = 0, zero outside.
double bump(double u);

// exp(-1/(1 - u^2)) rescaled to unit mass on (-1, 1).
double unit_mass_bump(double u);

// Smooth cutoff: 1 on |x| <= 1/2, 0 on |x| >= 1, C^infinity in between.
double smooth_cutoff(double x);

}  // namespace eigenrestrict
