#include "eigenrestrict/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace eigenrestrict {

namespace {

struct RitzValue {
    double sigma;
    double last_left;  // last component of the leading left singular vector of B
};

// Leading singular triple of the upper bidiagonal matrix with diagonal alpha and superdiagonal beta.
RitzValue leading_ritz_value(const std::vector<double>& alpha, const std::vector<double>& beta) {
    const auto k = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        b(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < k) b(i, i + 1) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeFullU);
    return {svd.singularValues()(0), svd.matrixU()(k - 1, 0)};
}

void orthogonalize(Eigen::VectorXcd& x, const std::vector<Eigen::VectorXcd>& basis) {
    // Two passes of classical Gram-Schmidt keep the basis orthogonal to working precision.
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) x -= q * q.dot(x);
    }
}

}  // namespace

SingularValueEstimate top_singular_value(const Eigen::MatrixXcd& a, int max_iterations, double tolerance) {
    const Eigen::Index cols = a.cols();
    if (a.rows() == 0 || cols == 0) return {0.0, 0, true};
    const int limit = static_cast<int>(std::min<Eigen::Index>(max_iterations, std::min(a.rows(), cols)));

    std::mt19937_64 rng(0x5eed'1234'abcdULL);
    Eigen::VectorXcd v(cols);
    for (Eigen::Index i = 0; i < cols; ++i) {
        const double re = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
        const double im = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
        v(i) = {re, im};
    }
    v.normalize();

    std::vector<Eigen::VectorXcd> us, vs{v};
    std::vector<double> alpha, beta;
    Eigen::VectorXcd u_prev;
    double sigma = 0.0;
    for (int k = 0; k < limit; ++k) {
        Eigen::VectorXcd u = a * vs.back();
        if (k > 0) u -= beta.back() * u_prev;
        orthogonalize(u, us);
        const double al = u.norm();
        alpha.push_back(al);
        if (al <= 1e-300) return {leading_ritz_value(alpha, beta).sigma, k + 1, true};
        u /= al;
        us.push_back(u);

        Eigen::VectorXcd w = a.adjoint() * u - al * vs.back();
        orthogonalize(w, vs);
        const double be = w.norm();

        // A^* U_k p = sigma V_k q + beta_k p_k v_{k+1}: the Ritz residual is beta_k |p_k|.
        const auto ritz = leading_ritz_value(alpha, beta);
        sigma = ritz.sigma;
        if (be * std::abs(ritz.last_left) <= tolerance * sigma || be <= 1e-14 * std::max(sigma, 1e-300)) {
            return {sigma, k + 1, true};
        }
        beta.push_back(be);
        u_prev = u;
        vs.push_back(w / be);
    }
    return {sigma, limit, limit == std::min(a.rows(), cols)};
}

}  // namespace eigenrestrict
