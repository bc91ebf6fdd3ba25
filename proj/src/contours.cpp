#include "dbarrier/contours.hpp"

#include "dbarrier/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace dbarrier {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

} // namespace

cplx SinhContour::point(double y) const
{
    return I * omega1 + b * std::sinh(cplx(y, omega));
}

cplx SinhContour::derivative(double y) const
{
    return b * std::cosh(cplx(y, omega));
}

MapPoint map_point(const SinhContour& contour, double y)
{
    return {contour.point(y), contour.derivative(y)};
}

ContourGrid make_grid(const SinhContour& contour, double zeta, int n_half)
{
    if (!(zeta > 0.0) || n_half < 0)
        throw ValidationError("grid needs a positive step and non-negative size");
    ContourGrid g;
    g.contour = contour;
    g.zeta = zeta;
    g.n_half = n_half;
    g.points.reserve(2 * n_half + 1);
    g.derivs.reserve(2 * n_half + 1);
    for (int k = -n_half; k <= n_half; ++k) {
        double y = zeta * k;
        g.points.push_back(contour.point(y));
        g.derivs.push_back(contour.derivative(y));
    }
    return g;
}

cplx BromwichContour::point(double y) const
{
    return sigma + I * b * std::sinh(cplx(y, omega));
}

cplx BromwichContour::derivative(double y) const
{
    return I * b * std::cosh(cplx(y, omega));
}

BromwichGrid make_bromwich_grid(const BromwichContour& contour, double zeta, int n)
{
    if (!(contour.sigma - contour.b * std::sin(contour.omega) > 0.0))
        throw ValidationError("Bromwich contour must stay right of the origin");
    if (!(contour.omega > 0.0 && contour.omega < pi / 2))
        throw ValidationError("Bromwich angle must lie in (0, pi/2)");
    BromwichGrid g;
    g.contour = contour;
    g.zeta = zeta;
    g.n = n;
    for (int k = 0; k <= n; ++k) {
        g.points.push_back(contour.point(zeta * k));
        g.derivs.push_back(contour.derivative(zeta * k));
    }
    return g;
}

Truncation select_truncation(double b, double omega, double distance, double eps, double kappa,
                             double zeta)
{
    if (!(distance > 0.0))
        throw ValidationError("truncation distance must be positive");
    if (!(eps > 0.0 && eps < 1.0) || !(kappa > 0.0) || !(b > 0.0) || !(zeta > 0.0))
        throw ValidationError("invalid truncation parameters");
    double rate = b * distance * kappa * std::sin(std::abs(omega));
    double lambda = std::log(std::log(1.0 / eps) / rate);
    lambda = std::max(lambda, zeta);
    return {lambda, static_cast<int>(std::ceil(lambda / zeta))};
}

double select_step(double strip_half_width, double eps)
{
    if (!(strip_half_width > 0.0) || !(eps > 0.0))
        throw ValidationError("step selection needs positive width and tolerance");
    return 2.0 * pi * strip_half_width / std::log(10.0 / eps);
}

SinhContour contour_through_band(double lo, double hi, double omega, double d)
{
    double w = std::abs(omega);
    if (!(hi > lo) || !(d > 0.0) || !(d <= w))
        throw ValidationError("invalid contour band");
    SinhContour c;
    c.omega = omega;
    c.b = (hi - lo) / (std::sin(w + d) - std::sin(w - d));
    c.omega1 = omega > 0 ? hi - c.b * std::sin(w + d) : lo + c.b * std::sin(w + d);
    return c;
}

BromwichGrid default_bromwich_grid(double T, double omega_l, double d_l, double eps)
{
    if (!(T > 0.0))
        throw ValidationError("maturity must be positive");
    BromwichContour c;
    c.sigma = std::max(1.0, 1.0 / T);
    c.omega = omega_l;
    c.b = c.sigma / (2.0 * std::sin(omega_l));
    double zeta = select_step(d_l, eps);
    double lambda = std::acosh((c.sigma + std::log(1.0 / eps) / T) / (c.b * std::sin(omega_l)));
    return make_bromwich_grid(c, zeta, static_cast<int>(std::ceil(lambda / zeta)));
}

ContourParams default_params(Variant variant)
{
    ContourParams p;
    if (variant == Variant::B) {
        p.omega_cap = pi / 10;
        p.d_fraction = 0.7;
        p.omega_l = pi / 6;
    }
    return p;
}

ContourSet default_contour_set(const LevyModel& model, const ContourGeometry& geometry,
                               LaplaceMethod method, Variant variant)
{
    return default_contour_set(model, geometry, method, default_params(variant));
}

ContourSet default_contour_set(const LevyModel& model, const ContourGeometry& g,
                               LaplaceMethod method, const ContourParams& p)
{
    model.validate();
    const double nu = model.order();
    if (method == LaplaceMethod::SinhLaplace && nu < 1.0 && model.mu != 0.0)
        throw ValidationError(
            "sinh-accelerated Laplace inversion requires nu >= 1 or mu = 0; use the GWR method");
    if (!(g.h_minus < g.h_plus))
        throw ValidationError("require h_minus < h_plus");
    if (!(g.T > 0.0))
        throw ValidationError("maturity must be positive");

    const AnalyticityInfo an = analyticity(model);
    const double mu_plus = an.mu_plus;
    const double mu_minus = an.mu_minus;
    const double gamma = std::min(an.gamma_plus, -an.gamma_minus);

    // Angle budget: psi(xi) rotates by nu*arg(xi), and the Bromwich nodes
    // add up to pi/2 + omega_l on top of that.
    const double omega_l = method == LaplaceMethod::SinhLaplace ? p.omega_l : 0.0;
    const double omega = std::min(p.omega_cap, (pi / 2 - omega_l) / (2.0 * nu));
    const double d = p.d_fraction * std::min({omega, gamma - omega, (pi / 2 - omega_l) / nu - omega});
    if (!(d > 0.0))
        throw ContourError("no admissible strip for the sinh deformation");
    const double zeta = select_step(d, p.eps) * p.step_scale;

    SinhContour plus = contour_through_band(0.05 * mu_plus, 0.5 * mu_plus, omega, d);
    SinhContour minus;
    if (g.below_minus_i) {
        if (!(mu_minus < -1.0))
            throw ValidationError("call payoffs need lambda_minus < -1");
        double span = mu_minus + 1.0;
        minus = contour_through_band(-1.0 + 0.6 * span, -1.0 + 0.15 * span, -omega, d);
    } else {
        minus = contour_through_band(0.4 * mu_minus, 0.05 * mu_minus, -omega, d);
    }

    ContourSet set;
    set.d = d;
    const double dist = std::min(g.min_distance, g.h_plus - g.h_minus);
    Truncation tp = select_truncation(plus.b, omega, dist, p.eps, p.kappa, zeta);
    Truncation tm = select_truncation(minus.b, omega, dist, p.eps, p.kappa, zeta);
    set.L_plus = make_grid(plus, zeta, tp.n);
    set.L_minus = make_grid(minus, zeta, tm.n);

    // The factor integrands decay only like y e^{-y}; the fine grids extend
    // far enough for that tail to drop below eps.
    const double zeta1 = zeta * p.fine_step_ratio;
    const double extra = std::log(1.0 / p.eps) + 5.0;
    set.L_plus_fine = make_grid(plus, zeta1, static_cast<int>(std::ceil((tp.lambda + extra) / zeta1)));
    set.L_minus_fine =
        make_grid(minus, zeta1, static_cast<int>(std::ceil((tm.lambda + extra) / zeta1)));

    double sep = std::numeric_limits<double>::infinity();
    for (const cplx& eta : set.L_plus.points)
        sep = std::min(sep, (eta.imag() - minus.apex()) / (1.0 + std::abs(eta)));
    if (!(sep > 0.0) || !(plus.apex() > 0.0 && plus.apex() < mu_plus) ||
        !(minus.apex() < 0.0 && minus.apex() > mu_minus))
        throw ContourError("contours L+ and L- are not separated inside the strip");
    set.separation = sep;

    if (method == LaplaceMethod::SinhLaplace) {
        double d_l = p.d_fraction * std::min(omega_l, pi / 2 - omega_l - nu * omega);
        if (!(d_l > 0.0))
            throw ContourError("no admissible strip for the Bromwich deformation");
        BromwichGrid bg = default_bromwich_grid(g.T, omega_l, d_l, p.eps);
        if (p.step_scale != 1.0) {
            double z = bg.zeta * p.step_scale;
            bg = make_bromwich_grid(bg.contour, z, static_cast<int>(std::ceil(bg.n * bg.zeta / z)));
        }
        set.bromwich = std::move(bg);
    }
    return set;
}

void validate_grid_for_q(const LevyModel& model, const ContourGrid& grid, cplx q)
{
    double prev_arg = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        cplx w = 1.0 + psi(model, grid.points[k]) / q;
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) ||
            (w.imag() == 0.0 && w.real() <= 0.0))
            throw ContourError("1 + psi/q leaves the principal branch domain on the grid");
        double a = std::arg(w);
        if (k > 0 && std::abs(a - prev_arg) > pi)
            throw ContourError("log(1 + psi/q) winds across the branch cut along the grid");
        prev_arg = a;
    }
}

cplx guarded_exp(cplx z)
{
    if (z.real() < -745.0)
        return 0.0;
    if (z.real() > 700.0)
        throw ContourError("exponent overflow; the contour runs in a growing direction");
    return std::exp(z);
}

} // namespace dbarrier
