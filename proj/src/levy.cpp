#include "dbarrier/levy.hpp"

#include "dbarrier/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dbarrier {

namespace {

constexpr double pi = std::numbers::pi;

// Principal branch z^nu with 0^nu = 0.
cplx cpow(cplx z, double nu)
{
    if (z == cplx(0.0, 0.0))
        return 0.0;
    return std::exp(nu * std::log(z));
}

void check_order(double nu, const char* name)
{
    if (!(nu > 0.0 && nu < 2.0) || nu == 1.0)
        throw ValidationError(std::string(name) + " must lie in (0,2) and differ from 1");
}

} // namespace

LevyModel LevyModel::kobol(double nu, double lambda_plus, double lambda_minus, double c, double mu)
{
    return kobol_asymmetric(nu, nu, lambda_plus, lambda_minus, c, c, mu);
}

LevyModel LevyModel::kobol_asymmetric(double nu_plus, double nu_minus, double lambda_plus,
                                      double lambda_minus, double c_plus, double c_minus, double mu)
{
    LevyModel m;
    m.kind = ModelKind::KoBoL;
    m.nu_plus = nu_plus;
    m.nu_minus = nu_minus;
    m.lambda_plus = lambda_plus;
    m.lambda_minus = lambda_minus;
    m.c_plus = c_plus;
    m.c_minus = c_minus;
    m.mu = mu;
    m.validate();
    return m;
}

LevyModel LevyModel::kobol_from_m2(double nu, double lambda_plus, double lambda_minus, double m2,
                                   double mu)
{
    return kobol(nu, lambda_plus, lambda_minus, calibrate_c(nu, lambda_plus, lambda_minus, m2), mu);
}

LevyModel LevyModel::gaussian(double sigma, double mu)
{
    LevyModel m;
    m.kind = ModelKind::Gaussian;
    m.nu_plus = m.nu_minus = 2.0;
    m.lambda_plus = m.gaussian_strip;
    m.lambda_minus = -m.gaussian_strip;
    m.sigma = sigma;
    m.mu = mu;
    m.validate();
    return m;
}

double LevyModel::order() const
{
    if (kind == ModelKind::Gaussian)
        return 2.0;
    return std::max(nu_plus, nu_minus);
}

bool LevyModel::symmetric() const
{
    return kind == ModelKind::KoBoL && nu_plus == nu_minus && c_plus == c_minus;
}

void LevyModel::validate() const
{
    if (!std::isfinite(mu))
        throw ValidationError("mu must be finite");
    if (kind == ModelKind::Gaussian) {
        if (!(sigma >= 0.0) || !std::isfinite(sigma))
            throw ValidationError("sigma must be finite and non-negative");
        if (!(gaussian_strip > 0.0))
            throw ValidationError("gaussian_strip must be positive");
        return;
    }
    check_order(nu_plus, "nu_plus");
    check_order(nu_minus, "nu_minus");
    if (!(lambda_minus < 0.0 && lambda_plus > 0.0) || !std::isfinite(lambda_minus) ||
        !std::isfinite(lambda_plus))
        throw ValidationError("require lambda_minus < 0 < lambda_plus");
    if (!(c_plus > 0.0 && c_minus > 0.0) || !std::isfinite(c_plus) || !std::isfinite(c_minus))
        throw ValidationError("jump intensities must be positive");
}

cplx psi0(const LevyModel& m, cplx xi)
{
    if (m.kind == ModelKind::Gaussian)
        return 0.5 * m.sigma * m.sigma * xi * xi;

    if (xi.real() == 0.0 && (xi.imag() > m.lambda_plus || xi.imag() < m.lambda_minus))
        throw DomainError("psi evaluated on a branch cut at xi = i*" + std::to_string(xi.imag()));

    const cplx i(0.0, 1.0);
    // Upward jumps (intensity c_+) are tempered by lambda_-; downward ones by lambda_+.
    cplx up = m.c_plus * std::tgamma(-m.nu_plus) *
              (std::pow(-m.lambda_minus, m.nu_plus) - cpow(-m.lambda_minus - i * xi, m.nu_plus));
    cplx down = m.c_minus * std::tgamma(-m.nu_minus) *
                (std::pow(m.lambda_plus, m.nu_minus) - cpow(m.lambda_plus + i * xi, m.nu_minus));
    return up + down;
}

cplx psi(const LevyModel& m, cplx xi)
{
    return cplx(0.0, -m.mu) * xi + psi0(m, xi);
}

double calibrate_c(double nu, double lambda_plus, double lambda_minus, double m2)
{
    check_order(nu, "nu");
    if (!(lambda_minus < 0.0 && lambda_plus > 0.0))
        throw ValidationError("require lambda_minus < 0 < lambda_plus");
    if (!(m2 > 0.0))
        throw ValidationError("m2 must be positive");
    double s = std::pow(-lambda_minus, nu - 2.0) + std::pow(lambda_plus, nu - 2.0);
    return m2 / (std::tgamma(2.0 - nu) * s);
}

double riskfree_residual(const LevyModel& m)
{
    if (m.kind == ModelKind::KoBoL && m.lambda_minus > -1.0)
        throw DomainError("-i lies outside the strip of analyticity (need lambda_minus <= -1)");
    return psi(m, cplx(0.0, -1.0)).real();
}

AnalyticityInfo analyticity(const LevyModel& m)
{
    AnalyticityInfo a{};
    a.mu_minus = m.lambda_minus;
    a.mu_plus = m.lambda_plus;
    a.nu = m.order();
    if (m.kind == ModelKind::Gaussian) {
        a.gamma_minus = a.gamma_prime_minus = -pi / 4.0;
        a.gamma_plus = a.gamma_prime_plus = pi / 4.0;
    } else {
        a.gamma_minus = -pi / 2.0;
        a.gamma_plus = pi / 2.0;
        double g = std::min(pi / 2.0, pi / (2.0 * a.nu));
        a.gamma_prime_minus = -g;
        a.gamma_prime_plus = g;
    }
    return a;
}

cplx c_infinity(const LevyModel& m, double phi)
{
    if (m.kind == ModelKind::Gaussian)
        return 0.5 * m.sigma * m.sigma * std::polar(1.0, 2.0 * phi);
    if (!m.symmetric())
        throw ValidationError("c_infinity is defined for the symmetric KoBoL model only");
    double nu = m.nu_plus;
    return -2.0 * m.c_plus * std::tgamma(-nu) * std::cos(nu * pi / 2.0) * std::polar(1.0, nu * phi);
}

LevyModel mirrored(const LevyModel& m)
{
    LevyModel r = m;
    r.mu = -m.mu;
    if (m.kind == ModelKind::Gaussian)
        return r;
    r.lambda_plus = -m.lambda_minus;
    r.lambda_minus = -m.lambda_plus;
    r.c_plus = m.c_minus;
    r.c_minus = m.c_plus;
    r.nu_plus = m.nu_minus;
    r.nu_minus = m.nu_plus;
    return r;
}

} // namespace dbarrier
