#include "bicov/compare.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "bicov/errors.hpp"
#include "bicov/format.hpp"
#include "bicov/validity.hpp"

namespace bicov {

double constrained_a_for_rho(double rho, LmcRoot root)
{
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::domain_error("constrained_a_for_rho: requires rho in [0, 1]");
    const double disc = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    const double half = root == LmcRoot::plus ? (1.0 + disc) / 2.0 : (1.0 - disc) / 2.0;
    return std::sqrt(half);
}

namespace {

// closed form when covered, numeric fallback otherwise
double d_index_any(const Model& model, const IndexTriple& triple)
{
    try {
        return d_index_closed(model, triple);
    } catch (const unsupported_model_error&) {
        return d_index_numeric(model, triple);
    }
}

double dtilde_any(const Model& model, const IndexTriple& triple)
{
    try {
        return dtilde_closed(model, triple);
    } catch (const unsupported_model_error&) {
        return dtilde_numeric(model, triple);
    }
}

} // namespace

std::vector<ComparisonRow> compare_on_rho_grid(
    const std::array<UnivariateCorrelation, 2>& lmc_latents,
    const std::array<double, 3>& exp_alphas,
    const std::vector<double>& rho_grid, const IndexTriple& triple, LmcRoot root)
{
    validate_triple(triple);
    for (double rho : rho_grid)
        if (!(rho >= 0.0 && rho < 1.0))
            throw std::domain_error("compare_on_rho_grid: grid values must lie in [0, 1)");

    // the validity bound matters only when the requested index reads the
    // cross correlation of the exponential model
    double exp_bound = 2.0; // sentinel: no determinable restriction
    if (triple.involves_cross()) {
        try {
            exp_bound = matern_colocated_bound(exp_alphas, {0.5, 0.5, 0.5});
        } catch (const unsupported_regime_error&) {
        }
    }

    std::vector<ComparisonRow> rows;
    rows.reserve(rho_grid.size());
    for (double rho : rho_grid) {
        if (rho > exp_bound)
            throw bound_error("compare_on_rho_grid: rho exceeds the exponential "
                              "model's validity bound");
        const Model lmc = build_constrained_lmc(constrained_a_for_rho(rho, root),
                                                lmc_latents[0], lmc_latents[1]);
        const Model exp_model = BivariateMaternModel::exponential(exp_alphas, rho);
        ComparisonRow row;
        row.rho12 = rho;
        row.triple = triple;
        row.d_lmc = d_index_any(lmc, triple);
        row.d_exp = d_index_any(exp_model, triple);
        row.dtilde_lmc = dtilde_any(lmc, triple);
        row.dtilde_exp = dtilde_any(exp_model, triple);
        rows.push_back(row);
    }
    return rows;
}

bool dominance_check(const std::vector<ComparisonRow>& rows, double rho_threshold)
{
    for (std::size_t r = 1; r < rows.size(); ++r)
        if (rows[r].rho12 < rows[r - 1].rho12)
            throw std::invalid_argument("dominance_check: rows must be sorted by rho");
    for (const auto& row : rows) {
        if (row.rho12 < rho_threshold)
            continue;
        if (!(row.d_lmc < row.d_exp) || !(row.dtilde_lmc < row.dtilde_exp))
            return false;
    }
    return true;
}

void write_comparison_csv(const std::vector<ComparisonRow>& rows, std::ostream& out)
{
    out << "rho12,d_lmc,d_exp,dtilde_lmc,dtilde_exp\n";
    for (const auto& row : rows) {
        out << format_sig10(row.rho12) << ',' << format_sig10(row.d_lmc) << ','
            << format_sig10(row.d_exp) << ',' << format_sig10(row.dtilde_lmc)
            << ',' << format_sig10(row.dtilde_exp) << '\n';
    }
}

} // namespace bicov
