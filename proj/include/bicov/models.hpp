#ifndef BICOV_MODELS_HPP
#define BICOV_MODELS_HPP

#include <array>
#include <optional>
#include <variant>

#include <Eigen/Core>

namespace bicov {

enum class KernelKind { exponential, matern };

// Isotropic univariate correlation kernel, R(0) = 1.
struct UnivariateCorrelation {
    KernelKind kind = KernelKind::exponential;
    double rate = 1.0;       // alpha, inverse-distance units
    double smoothness = 0.5; // nu, used by the matern kind only

    static UnivariateCorrelation exponential(double rate);
    static UnivariateCorrelation matern(double rate, double nu);
};

/// Normalized Matern correlation (2^{1-nu}/Gamma(nu)) x^nu K_nu(x) with
/// M(0) = 1; x is the scaled distance alpha*t.
double matern_correlation(double x, double nu);

/// R(t) for a univariate kernel; exactly 1 at t = 0.
double eval_univariate(const UnivariateCorrelation& corr, double t);

// Bivariate Matern-class model: marginal/cross entries share the kernel
// family but carry their own scale and smoothness. Triple order is
// (11, 22, 12) throughout.
struct BivariateMaternModel {
    std::array<double, 2> sigma2;
    double rho12;
    std::array<double, 3> alpha;
    std::array<double, 3> nu;

    BivariateMaternModel(std::array<double, 2> sigma2_, double rho12_,
                         std::array<double, 3> alpha_, std::array<double, 3> nu_);

    /// Exponential special case: all smoothness fixed at 1/2.
    static BivariateMaternModel exponential(std::array<double, 3> alpha,
                                            double rho12,
                                            std::array<double, 2> sigma2 = {1.0, 1.0});

    bool is_exponential() const; // all nu == 1/2
};

// Linear model of coregionalization: loadings applied to two independent
// latent correlations. Row-normalized so the marginals are correlations.
struct LmcModel {
    Eigen::Matrix2d loadings;
    std::array<UnivariateCorrelation, 2> latents;
    std::optional<double> constrained_a; // set when built via the a-parameterization

    /// General form; requires strictly positive loadings, unit row norms,
    /// and rank 2.
    static LmcModel general(const Eigen::Matrix2d& loadings,
                            std::array<UnivariateCorrelation, 2> latents);
};

/// Symmetric-loading construction A = [[a, s], [s, a]], s = sqrt(1 - a^2),
/// a in [0, 1]; colocated coefficient 2 a sqrt(1 - a^2). Degenerate
/// endpoints a = 0, 1 and the rank-1 point a = 1/sqrt(2) are allowed.
LmcModel build_constrained_lmc(double a, UnivariateCorrelation r1,
                               UnivariateCorrelation r2);

using Model = std::variant<BivariateMaternModel, LmcModel>;

/// Correlation-matrix entry R_ij(t); i, j are 1-based component indices.
double eval_cross(const Model& model, int i, int j, double t);

/// Colocated correlation coefficient R_12(0).
double colocated(const Model& model);

/// Smallest decay rate appearing in the model (used to pick grid spans).
double min_effective_rate(const Model& model);

/// Unit variances for an LMC, the model's own variances for a Matern.
std::array<double, 2> model_sigma2(const Model& model);

/// 2n x 2n covariance of the bivariate field at n sites (rows of
/// `points`, d columns, d in {1,2,3}); block (i,j) entry (p,q) is
/// sigma_i sigma_j R_ij(|s_p - s_q|). Exactly symmetric by construction.
Eigen::MatrixXd cross_covariance_matrix(const Model& model,
                                        const Eigen::MatrixXd& points,
                                        std::array<double, 2> sigma2);

/// Same, with the model's native variances.
Eigen::MatrixXd cross_covariance_matrix(const Model& model,
                                        const Eigen::MatrixXd& points);

} // namespace bicov

#endif
