#pragma once

#include <Eigen/Dense>

namespace eigenrestrict {

struct SingularValueEstimate {
    double sigma;
    int iterations;
    bool converged;
};

// Largest singular value by Golub-Kahan-Lanczos bidiagonalization with full
// reorthogonalization, started from a fixed pseudo-random vector (deterministic). Stops once
// the Ritz residual falls below tolerance * sigma.
SingularValueEstimate top_singular_value(const Eigen::MatrixXcd& a, int max_iterations = 300,
                                         double tolerance = 1e-12);

}  // namespace eigenrestrict
