#ifndef BICOV_VALIDITY_HPP
#define BICOV_VALIDITY_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "bicov/models.hpp"

namespace bicov {

// One sampled bound curve: (alpha12, bound) pairs for fixed marginal scales.
struct BoundCurve {
    double alpha11 = 0.0;
    double alpha22 = 0.0;
    std::vector<std::pair<double, double>> samples;
};

// Outcome of a Gram-matrix positive-semidefiniteness check.
struct PsdReport {
    int n_points = 0;
    int dimension = 0;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    bool psd = false;
    double tolerance = 0.0;
};

/// Colocated-correlation bound for the bivariate Matern in the two regimes
/// with a closed form: alpha12^2/(alpha11 alpha22) for constant smoothness
/// and alpha12 < min(alpha11, alpha22); 1 in the fully separable case.
/// Throws unsupported_regime_error otherwise.
double matern_colocated_bound(const std::array<double, 3>& alpha,
                              const std::array<double, 3>& nu);

/// Samples the closed-form bound over alpha12 = m*k/steps, k = 1..steps-1,
/// m = min(alpha11, alpha22); the right endpoint is excluded.
BoundCurve bound_curve(double alpha11, double alpha22, int steps);

/// Eigenvalue check of the 2n x 2n covariance at the given sites. The
/// verdict is min_eig >= -tolerance * max(1, |max_eig|).
PsdReport gram_psd_check(const Model& model, const Eigen::MatrixXd& points,
                         double tolerance = 1e-10);

/// Largest rho12 keeping the Gram matrix on `points` PSD, found by
/// bisection on [0, 1] to width 1e-3. Finite point sets only give
/// necessary conditions, so this upper-approximates the true bound.
double empirical_rho_bound(const std::array<double, 3>& alpha,
                           const std::array<double, 3>& nu,
                           const Eigen::MatrixXd& points,
                           double tolerance = 1e-10);

/// n equally spaced sites on [0, length].
Eigen::MatrixXd grid_1d(double length, int n);

/// Default violation-witness set: n equally spaced sites on [0, 10/min(alpha)].
Eigen::MatrixXd default_grid_1d(const std::array<double, 3>& alpha, int n = 200);

/// n i.i.d. uniform sites on [0, length]^dim from a seeded generator;
/// byte-reproducible across platforms.
Eigen::MatrixXd uniform_points(int n, int dim, double length, std::uint64_t seed);

/// CSV with header `alpha12,bound`, one row per sample, 10 significant digits.
void write_bound_curve_csv(const BoundCurve& curve, std::ostream& out);

} // namespace bicov

#endif
