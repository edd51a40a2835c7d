#include "bicov/models.hpp"

#include <cmath>
#include <stdexcept>

#include "bicov/specfun.hpp"

namespace bicov {

namespace {

bool near_half_integer(double nu, double half)
{
    return std::abs(nu - half) < 1e-12;
}

void check_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::domain_error(std::string(what) + " must be positive and finite");
}

void check_component_index(int i)
{
    if (i != 1 && i != 2)
        throw std::out_of_range("component index must be 1 or 2");
}

} // namespace

UnivariateCorrelation UnivariateCorrelation::exponential(double rate)
{
    check_positive(rate, "rate");
    return {KernelKind::exponential, rate, 0.5};
}

UnivariateCorrelation UnivariateCorrelation::matern(double rate, double nu)
{
    check_positive(rate, "rate");
    check_positive(nu, "smoothness");
    return {KernelKind::matern, rate, nu};
}

double matern_correlation(double x, double nu)
{
    if (x <= 0.0)
        return 1.0;
    if (x < 1e-30)
        return 1.0; // below any resolvable deviation from the origin value
    // stable closed forms for the common half-integer orders
    if (near_half_integer(nu, 0.5))
        return std::exp(-x);
    if (near_half_integer(nu, 1.5))
        return (1.0 + x) * std::exp(-x);
    if (near_half_integer(nu, 2.5))
        return (1.0 + x + x * x / 3.0) * std::exp(-x);
    const double c = std::exp((1.0 - nu) * std::log(2.0) - specfun::log_gamma(nu));
    return c * std::pow(x, nu) * specfun::bessel_k(nu, x);
}

double eval_univariate(const UnivariateCorrelation& corr, double t)
{
    if (t < 0.0)
        throw std::domain_error("eval_univariate: requires t >= 0");
    if (t == 0.0)
        return 1.0;
    if (corr.kind == KernelKind::exponential)
        return std::exp(-corr.rate * t);
    return matern_correlation(corr.rate * t, corr.smoothness);
}

BivariateMaternModel::BivariateMaternModel(std::array<double, 2> sigma2_,
                                           double rho12_,
                                           std::array<double, 3> alpha_,
                                           std::array<double, 3> nu_)
    : sigma2(sigma2_), rho12(rho12_), alpha(alpha_), nu(nu_)
{
    check_positive(sigma2[0], "sigma2[0]");
    check_positive(sigma2[1], "sigma2[1]");
    for (double a : alpha)
        check_positive(a, "alpha");
    for (double v : nu)
        check_positive(v, "nu");
    if (!(rho12 >= -1.0 && rho12 <= 1.0))
        throw std::domain_error("rho12 must lie in [-1, 1]");
}

BivariateMaternModel BivariateMaternModel::exponential(std::array<double, 3> alpha,
                                                       double rho12,
                                                       std::array<double, 2> sigma2)
{
    return BivariateMaternModel(sigma2, rho12, alpha, {0.5, 0.5, 0.5});
}

bool BivariateMaternModel::is_exponential() const
{
    for (double v : nu)
        if (!near_half_integer(v, 0.5))
            return false;
    return true;
}

LmcModel LmcModel::general(const Eigen::Matrix2d& loadings,
                           std::array<UnivariateCorrelation, 2> latents)
{
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (!(loadings(r, c) > 0.0))
                throw std::domain_error("LmcModel: loadings must be strictly positive");
    for (int r = 0; r < 2; ++r) {
        const double norm2 = loadings.row(r).squaredNorm();
        if (std::abs(norm2 - 1.0) > 1e-9)
            throw std::domain_error("LmcModel: rows of A must have unit norm");
    }
    const double det = loadings(0, 0) * loadings(1, 1) - loadings(0, 1) * loadings(1, 0);
    if (std::abs(det) < 1e-12)
        throw std::domain_error("LmcModel: A must have rank 2");
    return {loadings, latents, std::nullopt};
}

LmcModel build_constrained_lmc(double a, UnivariateCorrelation r1,
                               UnivariateCorrelation r2)
{
    if (!(a >= 0.0 && a <= 1.0))
        throw std::domain_error("build_constrained_lmc: requires a in [0, 1]");
    const double s = std::sqrt(1.0 - a * a);
    Eigen::Matrix2d loadings;
    loadings << a, s, s, a;
    return {loadings, {r1, r2}, a};
}

double eval_cross(const Model& model, int i, int j, double t)
{
    check_component_index(i);
    check_component_index(j);
    if (t < 0.0)
        throw std::domain_error("eval_cross: requires t >= 0");
    if (const auto* m = std::get_if<BivariateMaternModel>(&model)) {
        if (i == j) {
            const int d = i - 1;
            return matern_correlation(m->alpha[d] * t, m->nu[d]);
        }
        return m->rho12 * matern_correlation(m->alpha[2] * t, m->nu[2]);
    }
    const auto& lmc = std::get<LmcModel>(model);
    const double r1 = eval_univariate(lmc.latents[0], t);
    const double r2 = eval_univariate(lmc.latents[1], t);
    const auto& A = lmc.loadings;
    return A(i - 1, 0) * A(j - 1, 0) * r1 + A(i - 1, 1) * A(j - 1, 1) * r2;
}

double colocated(const Model& model)
{
    if (const auto* m = std::get_if<BivariateMaternModel>(&model))
        return m->rho12;
    const auto& A = std::get<LmcModel>(model).loadings;
    return A(0, 0) * A(1, 0) + A(0, 1) * A(1, 1);
}

double min_effective_rate(const Model& model)
{
    if (const auto* m = std::get_if<BivariateMaternModel>(&model))
        return std::min({m->alpha[0], m->alpha[1], m->alpha[2]});
    const auto& lmc = std::get<LmcModel>(model);
    return std::min(lmc.latents[0].rate, lmc.latents[1].rate);
}

std::array<double, 2> model_sigma2(const Model& model)
{
    if (const auto* m = std::get_if<BivariateMaternModel>(&model))
        return m->sigma2;
    return {1.0, 1.0};
}

Eigen::MatrixXd cross_covariance_matrix(const Model& model,
                                        const Eigen::MatrixXd& points,
                                        std::array<double, 2> sigma2)
{
    const Eigen::Index n = points.rows();
    if (n < 1)
        throw std::invalid_argument("cross_covariance_matrix: empty point set");
    if (points.cols() < 1 || points.cols() > 3)
        throw std::invalid_argument("cross_covariance_matrix: dimension must be 1..3");
    check_positive(sigma2[0], "sigma2[0]");
    check_positive(sigma2[1], "sigma2[1]");

    const double s[2] = {std::sqrt(sigma2[0]), std::sqrt(sigma2[1])};
    Eigen::MatrixXd cov(2 * n, 2 * n);
    for (Eigen::Index p = 0; p < n; ++p) {
        for (Eigen::Index q = p; q < n; ++q) {
            const double t = (points.row(p) - points.row(q)).norm();
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    const double v = (p == q && i == j)
                                         ? sigma2[i]
                                         : s[i] * s[j] * eval_cross(model, i + 1, j + 1, t);
                    cov(i * n + p, j * n + q) = v;
                    cov(j * n + q, i * n + p) = v;
                }
            }
        }
    }
    return cov;
}

Eigen::MatrixXd cross_covariance_matrix(const Model& model,
                                        const Eigen::MatrixXd& points)
{
    return cross_covariance_matrix(model, points, model_sigma2(model));
}

} // namespace bicov
