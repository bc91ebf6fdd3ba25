#include "dbarrier/errors.hpp"
#include "dbarrier/levy.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dbarrier;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("psi vanishes at the origin")
{
    for (double nu : {0.2, 0.8, 1.2, 1.8}) {
        LevyModel m = LevyModel::kobol_from_m2(nu, 1.0, -2.0, 0.1, 0.03);
        CHECK(std::abs(psi(m, 0.0)) < 1e-15);
    }
    CHECK(std::abs(psi(LevyModel::gaussian(0.3, 0.1), 0.0)) == 0.0);
}

TEST_CASE("psi at -i cancels for the symmetric zero-drift model")
{
    CHECK(std::abs(psi(LevyModel::kobol_from_m2(1.2, 1.0, -2.0, 0.1), -I)) < 1e-14);
    CHECK(std::abs(riskfree_residual(LevyModel::kobol_from_m2(0.8, 1.0, -2.0, 0.1))) < 1e-14);
}

TEST_CASE("risk-free residual picks up the drift and the Gaussian term")
{
    CHECK(riskfree_residual(LevyModel::kobol_from_m2(1.2, 1.0, -2.0, 0.1, 0.02)) ==
          doctest::Approx(-0.02).epsilon(1e-12));
    CHECK(riskfree_residual(LevyModel::gaussian(0.3)) == doctest::Approx(-0.045).epsilon(1e-14));
}

TEST_CASE("Gaussian exponent")
{
    LevyModel m = LevyModel::gaussian(0.4);
    for (cplx xi : {cplx(0.3, 0.0), cplx(-1.0, 0.5), cplx(2.0, -0.7)})
        CHECK(std::abs(psi(m, xi) - 0.08 * xi * xi) < 1e-15);
}

TEST_CASE("calibrate_c matches the closed form and a finite difference")
{
    const double nu = 1.2;
    double c = calibrate_c(nu, 1.0, -2.0, 0.1);
    CHECK(c == doctest::Approx(0.1 / (std::tgamma(2.0 - nu) * (std::pow(2.0, nu - 2.0) + 1.0))).epsilon(1e-14));
    CHECK(calibrate_c(nu, 1.0, -2.0, 0.2) == doctest::Approx(2.0 * c).epsilon(1e-14));

    LevyModel m = LevyModel::kobol(nu, 1.0, -2.0, c);
    const double h = 1e-3;
    auto f = [&](double x) { return psi(m, x).real(); };
    double d2 = (-f(2 * h) + 16 * f(h) - 30 * f(0.0) + 16 * f(-h) - f(-2 * h)) / (12 * h * h);
    CHECK(std::abs(d2 - 0.1) < 1e-8);
}

TEST_CASE("psi is real on the imaginary segment inside the strip")
{
    LevyModel m = LevyModel::kobol_from_m2(1.2, 1.0, -2.0, 0.1);
    for (double y : {-1.9, -1.0, -0.3, 0.4, 0.9}) {
        cplx v = psi(m, cplx(0.0, y));
        double direct = m.c_plus * std::tgamma(-1.2) * (std::pow(2.0, 1.2) - std::pow(2.0 + y, 1.2)) +
                        m.c_minus * std::tgamma(-1.2) * (1.0 - std::pow(1.0 - y, 1.2));
        CHECK(std::abs(v.imag()) < 1e-13);
        CHECK(std::abs(v.real() - direct) < 1e-13);
    }
}

TEST_CASE("psi rejects points on the branch cuts")
{
    LevyModel m = LevyModel::kobol_from_m2(1.2, 1.0, -2.0, 0.1);
    CHECK_THROWS_AS(psi(m, cplx(0.0, 1.5)), DomainError);
    CHECK_THROWS_AS(psi(m, cplx(0.0, -2.5)), DomainError);
    CHECK_NOTHROW(psi(m, cplx(0.0, 1.0)));
}

TEST_CASE("analyticity data")
{
    AnalyticityInfo a = analyticity(LevyModel::kobol_from_m2(1.2, 1.0, -2.0, 0.1));
    CHECK(a.mu_minus == -2.0);
    CHECK(a.mu_plus == 1.0);
    CHECK(a.gamma_plus == doctest::Approx(std::numbers::pi / 2));
    CHECK(a.gamma_minus == doctest::Approx(-std::numbers::pi / 2));
    AnalyticityInfo g = analyticity(LevyModel::gaussian(0.2));
    CHECK(g.gamma_plus == doctest::Approx(std::numbers::pi / 4));
    CHECK(LevyModel::kobol_from_m2(0.2, 1.0, -2.0, 0.1).order() == doctest::Approx(0.2));
}

TEST_CASE("mirrored model reflects the exponent")
{
    LevyModel m = LevyModel::kobol_asymmetric(1.2, 0.7, 1.5, -2.0, 0.3, 0.2, 0.01);
    LevyModel r = mirrored(m);
    for (cplx xi : {cplx(0.7, 0.1), cplx(-2.0, -0.4), cplx(3.0, 0.2)})
        CHECK(std::abs(psi(r, xi) - psi(m, -xi)) < 1e-13);
}

TEST_CASE("model validation")
{
    CHECK_THROWS_AS(LevyModel::kobol(2.5, 1.0, -2.0, 0.1).validate(), ValidationError);
    CHECK_THROWS_AS(LevyModel::kobol(1.2, -1.0, -2.0, 0.1).validate(), ValidationError);
    CHECK_THROWS_AS(LevyModel::kobol(1.0, 1.0, -2.0, 0.1).validate(), ValidationError);
    CHECK_NOTHROW(LevyModel::kobol(1.2, 1.0, -2.0, 0.1).validate());
}
