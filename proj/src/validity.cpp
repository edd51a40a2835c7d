#include "bicov/validity.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "bicov/errors.hpp"
#include "bicov/format.hpp"

namespace bicov {

namespace {

bool nearly_equal(double a, double b)
{
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

double matern_colocated_bound(const std::array<double, 3>& alpha,
                              const std::array<double, 3>& nu)
{
    for (double a : alpha)
        if (!(a > 0.0))
            throw std::domain_error("matern_colocated_bound: scales must be positive");
    const bool const_nu = nearly_equal(nu[0], nu[1]) && nearly_equal(nu[1], nu[2]);
    if (!const_nu)
        throw unsupported_regime_error(
            "matern_colocated_bound: no closed form for varying smoothness");
    if (nearly_equal(alpha[0], alpha[1]) && nearly_equal(alpha[1], alpha[2]))
        return 1.0; // separable: no restriction on the colocated parameter
    if (alpha[2] < std::min(alpha[0], alpha[1]))
        return alpha[2] * alpha[2] / (alpha[0] * alpha[1]);
    throw unsupported_regime_error(
        "matern_colocated_bound: requires alpha12 < min(alpha11, alpha22) "
        "or the separable case");
}

BoundCurve bound_curve(double alpha11, double alpha22, int steps)
{
    if (!(alpha11 > 0.0) || !(alpha22 > 0.0))
        throw std::domain_error("bound_curve: scales must be positive");
    if (steps < 2)
        throw std::domain_error("bound_curve: requires steps >= 2");
    const double m = std::min(alpha11, alpha22);
    BoundCurve curve{alpha11, alpha22, {}};
    curve.samples.reserve(steps - 1);
    const std::array<double, 3> nu{0.5, 0.5, 0.5};
    for (int k = 1; k < steps; ++k) {
        const double a12 = m * k / steps;
        curve.samples.emplace_back(a12, matern_colocated_bound({alpha11, alpha22, a12}, nu));
    }
    return curve;
}

PsdReport gram_psd_check(const Model& model, const Eigen::MatrixXd& points,
                         double tolerance)
{
    if (points.rows() < 2)
        throw std::invalid_argument("gram_psd_check: requires at least 2 points");
    if (!(tolerance > 0.0))
        throw std::domain_error("gram_psd_check: tolerance must be positive");
    const Eigen::MatrixXd cov = cross_covariance_matrix(model, points);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov,
                                                          Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    PsdReport report;
    report.n_points = static_cast<int>(points.rows());
    report.dimension = static_cast<int>(points.cols());
    report.min_eigenvalue = ev(0);
    report.max_eigenvalue = ev(ev.size() - 1);
    report.tolerance = tolerance;
    report.psd = report.min_eigenvalue >=
                 -tolerance * std::max(1.0, std::abs(report.max_eigenvalue));
    return report;
}

double empirical_rho_bound(const std::array<double, 3>& alpha,
                           const std::array<double, 3>& nu,
                           const Eigen::MatrixXd& points,
                           double tolerance)
{
    auto psd_at = [&](double rho) {
        const Model m = BivariateMaternModel({1.0, 1.0}, rho, alpha, nu);
        if (points.rows() < 2)
            return true; // a single site only constrains |rho| <= 1
        return gram_psd_check(m, points, tolerance).psd;
    };
    if (psd_at(1.0))
        return 1.0;
    if (!psd_at(0.0))
        return 0.0;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        (psd_at(mid) ? lo : hi) = mid;
    }
    return lo;
}

Eigen::MatrixXd grid_1d(double length, int n)
{
    if (!(length > 0.0))
        throw std::domain_error("grid_1d: length must be positive");
    if (n < 2)
        throw std::domain_error("grid_1d: requires n >= 2");
    Eigen::MatrixXd pts(n, 1);
    for (int k = 0; k < n; ++k)
        pts(k, 0) = length * k / (n - 1);
    return pts;
}

Eigen::MatrixXd default_grid_1d(const std::array<double, 3>& alpha, int n)
{
    const double m = std::min({alpha[0], alpha[1], alpha[2]});
    if (!(m > 0.0))
        throw std::domain_error("default_grid_1d: scales must be positive");
    return grid_1d(10.0 / m, n);
}

Eigen::MatrixXd uniform_points(int n, int dim, double length, std::uint64_t seed)
{
    if (n < 1)
        throw std::domain_error("uniform_points: requires n >= 1");
    if (dim < 1 || dim > 3)
        throw std::domain_error("uniform_points: dimension must be 1..3");
    std::mt19937_64 eng(seed);
    // fixed 53-bit mapping instead of std::uniform_real_distribution, which
    // is implementation-defined
    auto unit = [&eng]() {
        return static_cast<double>(eng() >> 11) * 0x1.0p-53;
    };
    Eigen::MatrixXd pts(n, dim);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < dim; ++c)
            pts(r, c) = length * unit();
    return pts;
}

void write_bound_curve_csv(const BoundCurve& curve, std::ostream& out)
{
    out << "alpha12,bound\n";
    for (const auto& [a12, bound] : curve.samples)
        out << format_sig10(a12) << ',' << format_sig10(bound) << '\n';
}

} // namespace bicov
