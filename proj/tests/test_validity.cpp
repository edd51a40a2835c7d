#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bicov/errors.hpp"
#include "bicov/models.hpp"
#include "bicov/validity.hpp"
#include "test_support.hpp"

using namespace bicov;
using testsupport::Rng;

TEST_CASE("closed-form colocated bound")
{
    const std::array<double, 3> nu{0.7, 0.7, 0.7};
    CHECK(matern_colocated_bound({5, 5, 4}, nu) == doctest::Approx(0.64).epsilon(1e-15));
    CHECK(matern_colocated_bound({5, 2, 1}, nu) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(matern_colocated_bound({3, 3, 3}, nu) == 1.0); // separable

    CHECK_THROWS_AS(matern_colocated_bound({5, 5, 4}, {0.5, 0.5, 1.0}),
                    unsupported_regime_error);
    CHECK_THROWS_AS(matern_colocated_bound({5, 5, 6}, nu), unsupported_regime_error);
    CHECK_THROWS_AS(matern_colocated_bound({5, -1, 1}, nu), std::domain_error);
}

TEST_CASE("bound curve sampling")
{
    const BoundCurve curve = bound_curve(5.0, 5.0, 100);
    REQUIRE(curve.samples.size() == 99);

    // exactly quadratic: bound * a11 a22 / a12^2 == 1 to machine precision
    for (const auto& [a12, b] : curve.samples) {
        CHECK(a12 < 5.0);
        CHECK(b * 25.0 / (a12 * a12) == doctest::Approx(1.0).epsilon(1e-15));
    }
    // nondecreasing toward 1 at the excluded right endpoint
    for (std::size_t k = 1; k < curve.samples.size(); ++k)
        CHECK(curve.samples[k].second >= curve.samples[k - 1].second);
    CHECK(curve.samples.back().second == doctest::Approx(0.9801).epsilon(1e-12));
    CHECK(curve.samples.front().second < 1e-3);

    // widening the scale gap never raises the bound at fixed alpha12
    const double a12 = 0.5;
    double prev = 2.0;
    for (double a22 : {5.0, 6.0, 8.0, 10.0}) {
        const double b = matern_colocated_bound({5.0, a22, a12}, {0.5, 0.5, 0.5});
        CHECK(b <= prev);
        prev = b;
    }
    CHECK(matern_colocated_bound({5.0, 1.0, 0.5}, {0.5, 0.5, 0.5}) ==
          doctest::Approx(0.05).epsilon(1e-15));

    CHECK_THROWS_AS(bound_curve(5.0, 5.0, 1), std::domain_error);
}

TEST_CASE("bound curve CSV format")
{
    const BoundCurve curve = bound_curve(5.0, 1.0, 4);
    std::ostringstream out;
    write_bound_curve_csv(curve, out);
    CHECK(out.str() == "alpha12,bound\n0.25,0.0125\n0.5,0.05\n0.75,0.1125\n");
}

TEST_CASE("gram psd check inside and outside the bound")
{
    SUBCASE("inside the bound on a 2-d point set")
    {
        const Model inside = BivariateMaternModel({1, 1}, 0.6, {5, 5, 4},
                                                  {0.5, 0.5, 0.5});
        const Eigen::MatrixXd pts = uniform_points(100, 2, 2.5, 7);
        const PsdReport rep = gram_psd_check(inside, pts);
        CHECK(rep.psd);
        CHECK(rep.n_points == 100);
        CHECK(rep.dimension == 2);
        CHECK(rep.max_eigenvalue > rep.min_eigenvalue);
    }

    SUBCASE("rho = 0.9 fails on the default 1-d grid")
    {
        const Model outside = BivariateMaternModel({1, 1}, 0.9, {5, 5, 4},
                                                   {0.5, 0.5, 0.5});
        const PsdReport rep = gram_psd_check(outside, default_grid_1d({5, 5, 4}));
        CHECK_FALSE(rep.psd);
        CHECK(rep.min_eigenvalue < -1.0); // the witness eigenvalue is far from zero
    }

    SUBCASE("constrained LMC is PSD for any loading")
    {
        Rng rng(123);
        for (double a : {0.0, 0.3, 1.0 / std::sqrt(2.0), 0.8, 1.0}) {
            const Model lmc = build_constrained_lmc(
                a, UnivariateCorrelation::exponential(1.0),
                UnivariateCorrelation::matern(2.0, 1.3));
            Eigen::MatrixXd pts = uniform_points(60, 2, 8.0, rng.uniform_int(1, 1000));
            CHECK(gram_psd_check(lmc, pts).psd);
        }
    }

    SUBCASE("argument validation")
    {
        const Model m = BivariateMaternModel({1, 1}, 0.0, {1, 1, 1}, {0.5, 0.5, 0.5});
        Eigen::MatrixXd one(1, 1);
        one << 0.0;
        CHECK_THROWS_AS(gram_psd_check(m, one), std::invalid_argument);
        Eigen::MatrixXd two(2, 1);
        two << 0.0, 1.0;
        CHECK_THROWS_AS(gram_psd_check(m, two, -1.0), std::domain_error);
    }
}

TEST_CASE("empirical rho bound")
{
    const std::array<double, 3> nu{0.5, 0.5, 0.5};

    SUBCASE("separable configuration is unrestricted")
    {
        CHECK(empirical_rho_bound({1, 1, 1}, nu, grid_1d(10.0, 80)) == 1.0);
    }

    SUBCASE("single site only constrains |rho| <= 1")
    {
        Eigen::MatrixXd one(1, 1);
        one << 0.0;
        CHECK(empirical_rho_bound({5, 5, 4}, nu, one) == 1.0);
    }

    SUBCASE("1-d grid resolves the one-dimensional frontier")
    {
        // on collinear sites the PSD frontier for alpha=(5,5,4) sits at
        // sqrt(0.64) = 0.8, above the closed-form (planar) bound 0.64
        const double b = empirical_rho_bound({5, 5, 4}, nu, default_grid_1d({5, 5, 4}));
        CHECK(b >= 0.64); // never under-rejects the closed-form bound
        CHECK(b >= 0.80 - 1e-3);
        CHECK(b <= 0.82);
    }

    SUBCASE("growing the point set never raises the bound")
    {
        // nested sets: every site of the sparse grid appears in the dense one
        const Eigen::MatrixXd dense = grid_1d(2.5, 101);
        Eigen::MatrixXd sparse(51, 1);
        for (int k = 0; k <= 50; ++k)
            sparse(k, 0) = dense(2 * k, 0);
        const double b_sparse = empirical_rho_bound({5, 5, 4}, nu, sparse);
        const double b_dense = empirical_rho_bound({5, 5, 4}, nu, dense);
        CHECK(b_sparse >= b_dense - 1e-9);
    }

    SUBCASE("2-d grid approaches the closed-form bound from above")
    {
        Eigen::MatrixXd pts(15 * 15, 2);
        for (int r = 0; r < 15; ++r)
            for (int c = 0; c < 15; ++c) {
                pts(r * 15 + c, 0) = 2.5 * r / 14.0;
                pts(r * 15 + c, 1) = 2.5 * c / 14.0;
            }
        const double b = empirical_rho_bound({5, 5, 4}, nu, pts);
        CHECK(b >= 0.64 - 1e-3);
        CHECK(b <= 0.64 + 0.05);
    }
}

TEST_CASE("point set helpers")
{
    const Eigen::MatrixXd a = uniform_points(25, 2, 4.0, 99);
    const Eigen::MatrixXd b = uniform_points(25, 2, 4.0, 99);
    CHECK(a == b); // seeded draws are reproducible
    CHECK(a.rows() == 25);
    CHECK(a.cols() == 2);
    CHECK(a.minCoeff() >= 0.0);
    CHECK(a.maxCoeff() <= 4.0);
    CHECK(uniform_points(25, 2, 4.0, 100) != a);

    const Eigen::MatrixXd g = default_grid_1d({5, 5, 4});
    CHECK(g.rows() == 200);
    CHECK(g(0, 0) == 0.0);
    CHECK(g(199, 0) == doctest::Approx(2.5));

    CHECK_THROWS_AS(uniform_points(0, 1, 1.0, 1), std::domain_error);
    CHECK_THROWS_AS(uniform_points(5, 4, 1.0, 1), std::domain_error);
    CHECK_THROWS_AS(grid_1d(1.0, 1), std::domain_error);
}

TEST_CASE("psd holds up to the bound across random configurations")
{
    Rng rng(20240);
    for (int cfg = 0; cfg < 25; ++cfg) {
        const double a11 = rng.uniform(0.5, 8.0);
        const double a22 = rng.uniform(0.5, 8.0);
        const double a12 = rng.uniform(0.2, 0.95) * std::min(a11, a22);
        const double nu_c = rng.uniform(0.2, 3.0);
        const std::array<double, 3> alpha{a11, a22, a12};
        const std::array<double, 3> nu{nu_c, nu_c, nu_c};
        const double bound = matern_colocated_bound(alpha, nu);
        const double rho = bound * rng.uniform(0.0, 1.0);
        const double length = 10.0 / a12;
        for (int dim : {1, 2}) {
            const Model m = BivariateMaternModel({1, 1}, rho, alpha, nu);
            const Eigen::MatrixXd pts =
                uniform_points(40, dim, length, 1000 + cfg * 2 + dim);
            CHECK(gram_psd_check(m, pts, 1e-8).psd);
        }
    }
}
