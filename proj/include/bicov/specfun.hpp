#ifndef BICOV_SPECFUN_HPP
#define BICOV_SPECFUN_HPP

namespace bicov::specfun {

// Relative accuracy target and tested domain of the kernel below.
struct Accuracy {
    double rel_tol = 1e-10;
    double gamma_x_min = 1e-12;
    double gamma_x_max = 700.0;
    double bessel_x_min = 1e-8;
    double bessel_x_max = 50.0;
    double bessel_nu_max = 10.0;
};

/// Gamma function for x in (0, 700]. Throws std::domain_error for x <= 0
/// and std::overflow_error for x > 700. Values above x ~ 171.6 exceed the
/// double range and come back as +inf.
double gamma(double x);

/// log Gamma for x > 0.
double log_gamma(double x);

/// Modified Bessel function of the second kind K_nu(x), nu in [0, 10],
/// x > 0. Half-integer orders use the finite closed form; otherwise a
/// small-x series / large-x continued fraction split with upward
/// recurrence in the order.
double bessel_k(double nu, double x);

} // namespace bicov::specfun

#endif
