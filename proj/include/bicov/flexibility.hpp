#ifndef BICOV_FLEXIBILITY_HPP
#define BICOV_FLEXIBILITY_HPP

#include "bicov/models.hpp"

namespace bicov {

// Index subscripts (i, k, j): the index compares R_ii against R_kj.
// D_{1,2,2} is the marginal pair R11 vs R22; D_{1,2,1} and D-tilde_{1,1,2}
// both compare R11 with the cross correlation.
struct IndexTriple {
    int i = 1;
    int k = 2;
    int j = 2;

    /// True when the compared entry R_kj is the cross correlation.
    bool involves_cross() const { return k != j; }
    /// True for the degenerate comparison of an entry with itself.
    bool degenerate() const { return k == j && k == i; }
};

/// Throws std::out_of_range unless every subscript is 1 or 2.
void validate_triple(const IndexTriple& triple);

/// Parses "i,k,j".
IndexTriple parse_triple(const std::string& text);

enum class GBranch { equal_rates, b_less_a, interior, boundary };

struct GSolution {
    double value = 0.0;
    double argmax_t = 0.0; // 0 when the maximum sits at the origin
    GBranch branch = GBranch::boundary;
};

/// max_{t>=0} |e^{-a t} - rho e^{-b t}| in closed form. The maximum is at
/// the origin (value 1 - rho) for rho <= 0, for equal rates, and for
/// b > a with log(rho) + log(b/a) <= 0; otherwise the stationary point
/// t* = (log(rho) + log(b/a)) / (b - a) enters.
GSolution g_closed(double a, double b, double rho);

struct DIndexGrid {
    double t_max = 0.0;      // 0: use 50 / min rate
    int n_points = 100000;
    double refine_tol = 1e-10;
};

/// sup_{t>0} |R_ii(t) - R_kj(t)| by grid scan plus golden-section
/// refinement; the t -> 0+ limit value is included as a candidate.
double d_index_numeric(const Model& model, const IndexTriple& triple,
                       const DIndexGrid& grid = {});

/// Closed form of the sup-difference index. Covered: bivariate Matern with
/// all smoothness 1/2 (every triple), and the constrained LMC with
/// exponential latents for marginal-pair triples. Throws
/// unsupported_model_error otherwise.
double d_index_closed(const Model& model, const IndexTriple& triple);

struct QuadratureOptions {
    double t_max = 0.0;   // 0: use 100 / min rate
    double abs_tol = 1e-10;
};

/// |integral_0^inf (R_ii - R_kj) dt| by adaptive quadrature; the absolute
/// value sits outside the integral.
double dtilde_numeric(const Model& model, const IndexTriple& triple,
                      const QuadratureOptions& quad = {});

/// Closed form of the integrated-difference index, built from the exact
/// kernel integrals (1/alpha for the exponential, the Gamma-ratio form for
/// the Matern). Throws unsupported_model_error for LMC cross triples and
/// non-constrained LMCs.
double dtilde_closed(const Model& model, const IndexTriple& triple);

/// integral_0^inf of the normalized Matern:
/// sqrt(pi) Gamma(nu + 1/2) / (alpha Gamma(nu)).
double integral_matern(double alpha, double nu);

} // namespace bicov

#endif
