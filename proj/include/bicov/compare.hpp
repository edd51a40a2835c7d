#ifndef BICOV_COMPARE_HPP
#define BICOV_COMPARE_HPP

#include <array>
#include <iosfwd>
#include <vector>

#include "bicov/flexibility.hpp"
#include "bicov/models.hpp"

namespace bicov {

// One matched-colocated-coefficient comparison between the constrained LMC
// and the bivariate exponential.
struct ComparisonRow {
    double rho12 = 0.0;
    double d_lmc = 0.0;
    double d_exp = 0.0;
    double dtilde_lmc = 0.0;
    double dtilde_exp = 0.0;
    IndexTriple triple;
};

// rho12 = 2 a sqrt(1 - a^2) has two roots a = sqrt((1 +- sqrt(1 - rho^2))/2);
// both give the same |2a^2 - 1|.
enum class LmcRoot { plus, minus };

/// Loading parameter a for a requested colocated coefficient in [0, 1].
double constrained_a_for_rho(double rho, LmcRoot root = LmcRoot::plus);

/// Per-rho index values for both models at matched colocated coefficients.
/// LMC latent rates pair with the exponential marginal rates, so the models
/// differ only in cross-structure. For triples touching the cross
/// correlation, rho values beyond the exponential model's closed-form
/// validity bound raise bound_error.
std::vector<ComparisonRow> compare_on_rho_grid(
    const std::array<UnivariateCorrelation, 2>& lmc_latents,
    const std::array<double, 3>& exp_alphas,
    const std::vector<double>& rho_grid, const IndexTriple& triple,
    LmcRoot root = LmcRoot::plus);

/// True iff every row at rho >= rho_threshold has both LMC indices strictly
/// below the exponential ones. Rows must be sorted by rho.
bool dominance_check(const std::vector<ComparisonRow>& rows,
                     double rho_threshold);

/// CSV with header `rho12,d_lmc,d_exp,dtilde_lmc,dtilde_exp`,
/// 10 significant digits.
void write_comparison_csv(const std::vector<ComparisonRow>& rows,
                          std::ostream& out);

} // namespace bicov

#endif
