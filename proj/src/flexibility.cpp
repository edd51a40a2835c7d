#include "bicov/flexibility.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bicov/errors.hpp"
#include "bicov/quadrature.hpp"
#include "bicov/specfun.hpp"

namespace bicov {

namespace {

bool effectively_exponential(const UnivariateCorrelation& corr)
{
    return corr.kind == KernelKind::exponential ||
           std::abs(corr.smoothness - 0.5) < 1e-12;
}

// exact integral of the kernel over [0, inf)
double kernel_integral(const UnivariateCorrelation& corr)
{
    if (corr.kind == KernelKind::exponential)
        return 1.0 / corr.rate;
    return integral_matern(corr.rate, corr.smoothness);
}

template <class F>
double golden_max(F&& f, double lo, double hi, double tol)
{
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = f(c), fd = f(d);
    while (hi - lo > tol) {
        if (fc < fd) {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = f(d);
        } else {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = f(c);
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

void validate_triple(const IndexTriple& triple)
{
    for (int v : {triple.i, triple.k, triple.j})
        if (v != 1 && v != 2)
            throw std::out_of_range("index triple entries must be 1 or 2");
}

IndexTriple parse_triple(const std::string& text)
{
    std::istringstream in(text);
    IndexTriple t;
    char c1 = 0, c2 = 0;
    if (!(in >> t.i >> c1 >> t.k >> c2 >> t.j) || c1 != ',' || c2 != ',' ||
        !(in >> std::ws).eof())
        throw std::invalid_argument("triple must have the form i,k,j");
    validate_triple(t);
    return t;
}

GSolution g_closed(double a, double b, double rho)
{
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("g_closed: rates must be positive");
    if (!(rho >= -1.0 && rho <= 1.0))
        throw std::domain_error("g_closed: rho must lie in [-1, 1]");
    const auto f = [&](double t) {
        return std::exp(-a * t) - rho * std::exp(-b * t);
    };
    if (a == b)
        return {1.0 - rho, 0.0, GBranch::equal_rates};
    if (rho <= 0.0)
        return {1.0 - rho, 0.0, GBranch::boundary};
    const double logcond = std::log(rho) + std::log(b / a);
    const double tstar = logcond / (b - a);
    if (b < a) {
        // f dips below zero at the stationary point; compare with f(0)
        const double dip = -f(tstar);
        if (dip > 1.0 - rho)
            return {dip, tstar, GBranch::b_less_a};
        return {1.0 - rho, 0.0, GBranch::b_less_a};
    }
    if (logcond > 0.0)
        return {f(tstar), tstar, GBranch::interior};
    return {1.0 - rho, 0.0, GBranch::boundary};
}

double d_index_numeric(const Model& model, const IndexTriple& triple,
                       const DIndexGrid& grid)
{
    validate_triple(triple);
    if (grid.n_points < 2)
        throw std::domain_error("d_index_numeric: requires n_points >= 2");
    const double t_max =
        grid.t_max > 0.0 ? grid.t_max : 50.0 / min_effective_rate(model);
    const auto diff = [&](double t) {
        return std::abs(eval_cross(model, triple.i, triple.i, t) -
                        eval_cross(model, triple.k, triple.j, t));
    };
    // t = 0 stands in for the t -> 0+ limit candidate
    double best_v = diff(0.0);
    double best_t = 0.0;
    const int n = grid.n_points;
    for (int k = 1; k <= n; ++k) {
        const double t = t_max * k / n;
        const double v = diff(t);
        if (v > best_v) {
            best_v = v;
            best_t = t;
        }
    }
    const double h = t_max / n;
    const double lo = std::max(0.0, best_t - h);
    const double hi = std::min(t_max, best_t + h);
    const double refined = golden_max(diff, lo, hi, grid.refine_tol);
    return std::max(best_v, diff(refined));
}

double d_index_closed(const Model& model, const IndexTriple& triple)
{
    validate_triple(triple);
    if (triple.degenerate())
        return 0.0;
    if (const auto* m = std::get_if<BivariateMaternModel>(&model)) {
        if (!m->is_exponential())
            throw unsupported_model_error(
                "d_index_closed: Matern covered only at smoothness 1/2");
        if (triple.involves_cross())
            return g_closed(m->alpha[triple.i - 1], m->alpha[2], m->rho12).value;
        return g_closed(m->alpha[triple.i - 1], m->alpha[triple.k - 1], 1.0).value;
    }
    const auto& lmc = std::get<LmcModel>(model);
    if (!lmc.constrained_a)
        throw unsupported_model_error(
            "d_index_closed: LMC covered only in the constrained form");
    if (!effectively_exponential(lmc.latents[0]) ||
        !effectively_exponential(lmc.latents[1]))
        throw unsupported_model_error(
            "d_index_closed: LMC covered only with exponential latents");
    if (triple.involves_cross())
        throw unsupported_model_error(
            "d_index_closed: no closed form for LMC cross triples");
    const double a = *lmc.constrained_a;
    const double k = g_closed(lmc.latents[0].rate, lmc.latents[1].rate, 1.0).value;
    return k * std::abs(2.0 * a * a - 1.0);
}

double dtilde_numeric(const Model& model, const IndexTriple& triple,
                      const QuadratureOptions& quad)
{
    validate_triple(triple);
    if (!(quad.abs_tol > 0.0))
        throw std::domain_error("dtilde_numeric: abs_tol must be positive");
    const double t_max =
        quad.t_max > 0.0 ? quad.t_max : 100.0 / min_effective_rate(model);
    const auto integrand = [&](double t) {
        return eval_cross(model, triple.i, triple.i, t) -
               eval_cross(model, triple.k, triple.j, t);
    };
    return std::abs(integrate_adaptive(integrand, 0.0, t_max, quad.abs_tol));
}

double dtilde_closed(const Model& model, const IndexTriple& triple)
{
    validate_triple(triple);
    if (triple.degenerate())
        return 0.0;
    if (const auto* m = std::get_if<BivariateMaternModel>(&model)) {
        const double own = integral_matern(m->alpha[triple.i - 1], m->nu[triple.i - 1]);
        if (triple.involves_cross())
            return std::abs(own - m->rho12 * integral_matern(m->alpha[2], m->nu[2]));
        return std::abs(own -
                        integral_matern(m->alpha[triple.k - 1], m->nu[triple.k - 1]));
    }
    const auto& lmc = std::get<LmcModel>(model);
    if (!lmc.constrained_a)
        throw unsupported_model_error(
            "dtilde_closed: LMC covered only in the constrained form");
    if (triple.involves_cross())
        throw unsupported_model_error(
            "dtilde_closed: no closed form for LMC cross triples");
    const double a = *lmc.constrained_a;
    return std::abs(2.0 * a * a - 1.0) *
           std::abs(kernel_integral(lmc.latents[0]) - kernel_integral(lmc.latents[1]));
}

double integral_matern(double alpha, double nu)
{
    if (!(alpha > 0.0))
        throw std::domain_error("integral_matern: requires alpha > 0");
    if (!(nu > 0.0) || nu > 10.0)
        throw std::domain_error("integral_matern: requires nu in (0, 10]");
    constexpr double kLogPi = 1.1447298858494001741; // log(pi)
    using specfun::log_gamma;
    return std::exp(0.5 * kLogPi + log_gamma(nu + 0.5) - log_gamma(nu)) / alpha;
}

} // namespace bicov
