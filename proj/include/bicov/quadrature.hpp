#ifndef BICOV_QUADRATURE_HPP
#define BICOV_QUADRATURE_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bicov {

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [a, b]; err is |K15 - G7|.
template <class F>
double gauss_kronrod_15(F&& f, double a, double b, double& err)
{
    // abscissae (positive half), Kronrod weights, Gauss weights
    static constexpr double xk[8] = {
        0.000000000000000, 0.207784955007898, 0.405845151377397,
        0.586087235467691, 0.741531185599394, 0.864864423359769,
        0.949107912342759, 0.991455371120813};
    static constexpr double wk[8] = {
        0.209482141084728, 0.204432940075298, 0.190350578064785,
        0.169004726639267, 0.140653259715525, 0.104790010322250,
        0.063092092629979, 0.022935322010529};
    static constexpr double wg[4] = {
        0.417959183673469, 0.381830050505119, 0.279705391489277,
        0.129484966168870};

    const double mid = 0.5 * (a + b);
    const double hal = 0.5 * (b - a);
    const double f0 = f(mid);
    double k15 = wk[0] * f0;
    double g7 = wg[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = hal * xk[i];
        const double fi = f(mid + dx) + f(mid - dx);
        k15 += wk[i] * fi;
        if (i % 2 == 0)
            g7 += wg[i / 2] * fi;
    }
    k15 *= hal;
    g7 *= hal;
    err = std::abs(k15 - g7);
    return k15;
}

} // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b] to absolute
/// tolerance abs_tol. Throws std::runtime_error when the subdivision
/// budget is exhausted before the tolerance is met.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol,
                          int max_intervals = 100000)
{
    struct Segment {
        double a, b, tol;
    };
    std::vector<Segment> stack{{a, b, abs_tol}};
    double total = 0.0;
    int used = 1;
    while (!stack.empty()) {
        const Segment seg = stack.back();
        stack.pop_back();
        double err;
        const double s = detail::gauss_kronrod_15(f, seg.a, seg.b, err);
        const double width = seg.b - seg.a;
        if (err <= seg.tol || width <= 1e-15 * (std::abs(seg.a) + std::abs(seg.b) + 1.0)) {
            total += s;
            continue;
        }
        used += 2;
        if (used > max_intervals)
            throw std::runtime_error("integrate_adaptive: subdivision limit exceeded");
        const double mid = 0.5 * (seg.a + seg.b);
        stack.push_back({seg.a, mid, 0.5 * seg.tol});
        stack.push_back({mid, seg.b, 0.5 * seg.tol});
    }
    return total;
}

} // namespace bicov

#endif
