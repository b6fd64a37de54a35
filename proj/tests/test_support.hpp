#pragma once

#include "eigenrestrict/geometry.hpp"

#include <cmath>
#include <random>

namespace testing {

// Uniform random point on S^{dim-1} (fixed seeds keep tests reproducible).
inline eigenrestrict::UnitVector random_point(std::mt19937_64& rng, int dim = 3) {
    std::normal_distribution<double> g;
    eigenrestrict::Vec v = eigenrestrict::Vec::zeros(dim);
    for (int i = 0; i < dim; ++i) v[i] = g(rng);
    return eigenrestrict::UnitVector::normalize(v);
}

// Random unit tangent vector at x.
inline eigenrestrict::Vec random_tangent(std::mt19937_64& rng, const eigenrestrict::UnitVector& x) {
    std::normal_distribution<double> g;
    eigenrestrict::Vec v = eigenrestrict::Vec::zeros(x.ambient_dim());
    for (int i = 0; i < x.ambient_dim(); ++i) v[i] = g(rng);
    v -= eigenrestrict::dot(v, x.vec()) * x.vec();
    return (1.0 / eigenrestrict::norm(v)) * v;
}

}  // namespace testing
