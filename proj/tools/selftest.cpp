#include "commands.hpp"

#include "dbarrier/contours.hpp"
#include "dbarrier/european.hpp"
#include "dbarrier/laplace.hpp"
#include "dbarrier/reference_tables.hpp"
#include "dbarrier/wiener_hopf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace dbarrier::cli {

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    double error;
    double tolerance;
};

ContourSet factor_grids(const LevyModel& model, double step_factor)
{
    ContourParams p = default_params(Variant::A);
    p.step_scale = step_factor;
    ContourGeometry g;
    g.h_minus = -0.05;
    g.h_plus = 0.05;
    g.min_distance = 0.01;
    g.T = 1.0;
    return default_contour_set(model, g, LaplaceMethod::Gwr, p);
}

Outcome laplace_pairs(double step_factor)
{
    auto grid = [&](double T) {
        BromwichGrid g = default_bromwich_grid(T, pi / 5, 0.8 * pi / 5, 1e-15);
        double z = g.zeta * step_factor;
        return make_bromwich_grid(g.contour, z, static_cast<int>(std::ceil(g.n * g.zeta / z)));
    };
    double err = 0.0;
    err = std::max(err, std::abs(invert_sinh({[](cplx q) { return 1.0 / q; }}, 1.0, grid(1.0)) - 1.0));
    err = std::max(err, std::abs(invert_sinh({[](cplx q) { return 1.0 / (q + 1.0); }}, 1.0, grid(1.0)) -
                                 std::exp(-1.0)));
    err = std::max(err, std::abs(invert_sinh({[](cplx q) { return 1.0 / (q * q); }}, 2.0, grid(2.0)) - 2.0));
    return {err, 1e-12};
}

Outcome gwr_pairs()
{
    double err = std::abs(invert_gwr({[](cplx q) { return 1.0 / q; }, true}, 1.0).value - 1.0);
    return {err, 1e-10};
}

Outcome wiener_hopf_identity(double step_factor)
{
    LevyModel m = reference_model(1.2);
    ContourSet g = factor_grids(m, step_factor);
    std::vector<cplx> xs;
    for (double x = -3.0; x <= 3.0; x += 0.5)
        xs.emplace_back(x, 0.0);
    double err = 0.0;
    for (double q : {1.0, 5.0, 25.0}) {
        auto pp = phi_plus_direct(m, q, xs, g.L_minus_fine);
        auto pm = phi_minus_direct(m, q, xs, g.L_plus_fine);
        for (std::size_t k = 0; k < xs.size(); ++k)
            err = std::max(err, std::abs((1.0 + psi(m, xs[k]) / q) * pp[k] * pm[k] - 1.0));
    }
    return {err, 1e-12};
}

Outcome brownian_factor(double step_factor)
{
    LevyModel m = LevyModel::gaussian(std::sqrt(2.0));
    // 1 + psi/q vanishes at +-i kappa; keep the contours inside that strip.
    m.lambda_plus = 1.0;
    m.lambda_minus = -1.0;
    ContourSet g = factor_grids(m, step_factor);
    const cplx I(0.0, 1.0);
    const double q = 1.0;
    const double kappa = std::sqrt(2.0 * q) / m.sigma;
    auto pp = phi_plus_direct(m, q, g.L_plus.points, g.L_minus_fine);
    auto pm = phi_minus_direct(m, q, g.L_minus.points, g.L_plus_fine);
    double err = 0.0;
    for (std::size_t k = 0; k < pp.size(); ++k)
        err = std::max(err, std::abs(pp[k] - kappa / (kappa - I * g.L_plus.points[k])));
    for (std::size_t k = 0; k < pm.size(); ++k)
        err = std::max(err, std::abs(pm[k] - kappa / (kappa + I * g.L_minus.points[k])));
    err = std::max(err, std::abs(phi_minus_at(m, q, -I, g.L_plus_fine) - kappa / (kappa + 1.0)));
    return {err, 1e-12};
}

Outcome european_oracles()
{
    const double sigma = 0.3;
    const double mu = 0.05;
    LevyModel m = LevyModel::gaussian(sigma, mu);
    double err = 0.0;
    for (double T : {0.1, 1.0}) {
        for (double x : {-0.2, 0.0, 0.15}) {
            const double a = 0.05;
            const double s = sigma * std::sqrt(T);
            // X_T ~ N(mu T, sigma^2 T)
            double digital = 0.5 * std::erfc(-(a - x - mu * T) / (s * std::sqrt(2.0)));
            err = std::max(err, std::abs(euro_digital(m, a, T, x) - digital));
            double mean = x + mu * T;
            double d1 = (mean - a + s * s) / s;
            double d2 = (mean - a) / s;
            auto cdf = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
            double call = std::exp(mean + 0.5 * s * s) * cdf(d1) - std::exp(a) * cdf(d2);
            err = std::max(err, std::abs(euro_call(m, a, T, x) - call));
        }
    }
    return {err, 1e-10};
}

Outcome mirror_symmetry()
{
    LevyModel m = reference_model(1.2);
    PriceRequest r;
    r.model = m;
    r.payoff = PayoffSpec::no_touch(-0.04, 0.06);
    r.T = 0.25;
    r.xs = {-0.02, 0.0, 0.03};
    r.method = Method::SinhLaplace;
    PriceRequest s = r;
    s.model = mirrored(m);
    s.payoff = PayoffSpec::no_touch(-0.06, 0.04);
    s.xs = {0.02, 0.0, -0.03};
    PriceReport a = price(r);
    PriceReport b = price(s);
    double err = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        err = std::max(err, std::abs(a.values[i] - b.values[i]));
    return {err, 1e-12};
}

} // namespace

bool cmd_selftest(std::ostream& out, double step_factor)
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> suites = {
        {"laplace_pairs_sinh", [&] { return laplace_pairs(step_factor); }},
        {"laplace_pairs_gwr", [] { return gwr_pairs(); }},
        {"wiener_hopf_identity", [&] { return wiener_hopf_identity(step_factor); }},
        {"brownian_factor", [&] { return brownian_factor(step_factor); }},
        {"european_oracles", [] { return european_oracles(); }},
        {"mirror_symmetry", [] { return mirror_symmetry(); }},
    };
    int failed = 0;
    char buf[256];
    for (const auto& [name, run] : suites) {
        try {
            Outcome o = run();
            bool ok = o.error <= o.tolerance;
            std::snprintf(buf, sizeof buf, "%s %s: max error %.3e (tolerance %.0e)", ok ? "PASS" : "FAIL",
                          name.c_str(), o.error, o.tolerance);
            failed += ok ? 0 : 1;
        } catch (const std::exception& e) {
            std::snprintf(buf, sizeof buf, "FAIL %s: %s", name.c_str(), e.what());
            ++failed;
        }
        out << buf << '\n';
    }
    out << "selftest: " << suites.size() - failed << " passed, " << failed << " failed\n";
    return failed == 0;
}

} // namespace dbarrier::cli
