#include "dbarrier/european.hpp"

#include "dbarrier/contours.hpp"
#include "dbarrier/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dbarrier {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);
constexpr double omega = pi / 8;
constexpr double y_max = 200.0;

struct Line {
    SinhContour contour;
    double zeta;
};

Line make_line(const LevyModel& model, double lo, double hi, bool upper, double eps)
{
    AnalyticityInfo an = analyticity(model);
    double gamma = std::min(an.gamma_prime_plus, -an.gamma_prime_minus);
    double d = 0.8 * std::min(omega, gamma - omega);
    return {contour_through_band(lo, hi, upper ? omega : -omega, d), select_step(d, eps)};
}

// (1/2 pi) int e^{i x' xi - T psi0(xi)} f(xi) d xi along the line; the sum
// runs outwards until three consecutive terms on both sides are negligible.
template <class F>
cplx fourier_integral(const LevyModel& model, const Line& line, double xp, double T, F f, double eps)
{
    auto term = [&](double y) {
        cplx xi = line.contour.point(y);
        return guarded_exp(I * xp * xi - T * psi0(model, xi)) * f(xi) * line.contour.derivative(y);
    };
    const double tiny = eps * 1e-3;
    cplx acc = term(0.0);
    int quiet = 0;
    for (int k = 1; k * line.zeta <= y_max && quiet < 3; ++k) {
        cplx a = term(k * line.zeta);
        cplx b = term(-k * line.zeta);
        acc += a + b;
        quiet = (std::abs(a) < tiny && std::abs(b) < tiny) ? quiet + 1 : 0;
    }
    return line.zeta / (2.0 * pi) * acc;
}

void check_time(double T)
{
    if (!(T > 0.0) || !std::isfinite(T))
        throw ValidationError("maturity must be positive");
}

} // namespace

double euro_digital(const LevyModel& model, double a, double T, double x, double eps)
{
    check_time(T);
    AnalyticityInfo an = analyticity(model);
    const double xp = x - a + model.mu * T;
    auto f = [](cplx xi) { return 1.0 / (-I * xi); };
    if (xp >= 0.0) {
        Line l = make_line(model, 0.05 * an.mu_plus, 0.5 * an.mu_plus, true, eps);
        return fourier_integral(model, l, xp, T, f, eps).real();
    }
    Line l = make_line(model, 0.4 * an.mu_minus, 0.05 * an.mu_minus, false, eps);
    return 1.0 + fourier_integral(model, l, xp, T, f, eps).real();
}

double euro_call(const LevyModel& model, double a, double T, double x, double eps)
{
    check_time(T);
    AnalyticityInfo an = analyticity(model);
    if (!(an.mu_minus < -1.0))
        throw DomainError("call prices need lambda_minus < -1 so that e^X is integrable");
    const double xp = x - a + model.mu * T;
    const double ea = std::exp(a);
    auto f = [ea](cplx xi) { return -ea / (xi * (xi + I)); };
    if (xp >= 0.0) {
        Line l = make_line(model, 0.05 * an.mu_plus, 0.5 * an.mu_plus, true, eps);
        double forward = std::exp(x - T * psi(model, cplx(0.0, -1.0)).real());
        return forward - ea + fourier_integral(model, l, xp, T, f, eps).real();
    }
    // Below -i the integral alone represents the price.
    double span = an.mu_minus + 1.0;
    Line l = make_line(model, -1.0 + 0.6 * span, -1.0 + 0.15 * span, false, eps);
    return fourier_integral(model, l, xp, T, f, eps).real();
}

double euro_constant(double, double)
{
    return 1.0;
}

} // namespace dbarrier
