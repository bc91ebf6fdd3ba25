#include "dbarrier/laplace.hpp"

#include "dbarrier/errors.hpp"

#include <cmath>
#include <numbers>

namespace dbarrier {

double sinh_inversion_sum(const BromwichGrid& grid, double T, std::span<const cplx> values)
{
    if (values.size() != grid.points.size())
        throw ValidationError("sample count does not match the Bromwich grid");
    cplx acc = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        cplx term = guarded_exp(T * grid.points[k]) * values[k] * grid.derivs[k];
        acc += k == 0 ? 0.5 * term : term;
    }
    // derivs carry the factor i b; the real part of -i * acc equals Im(acc).
    return grid.zeta / std::numbers::pi * (acc / cplx(0.0, 1.0)).real();
}

double invert_sinh(const TransformEvaluator& ev, double T, const BromwichGrid& grid)
{
    if (ev.real_only)
        throw ValidationError("the sinh inversion needs a transform defined off the real axis");
    std::vector<cplx> values(grid.points.size());
    for (std::size_t k = 0; k < values.size(); ++k)
        values[k] = ev.fn(grid.points[k]);
    return sinh_inversion_sum(grid, T, values);
}

std::vector<double> gwr_nodes(double T, int M)
{
    if (!(T > 0.0) || M < 1)
        throw ValidationError("GWR needs T > 0 and M >= 1");
    std::vector<double> q(2 * M);
    for (int i = 0; i < 2 * M; ++i)
        q[i] = (i + 1) * std::numbers::ln2 / T;
    return q;
}

GwrResult gwr_from_samples(std::span<const double> F, double T, int M)
{
    if (static_cast<int>(F.size()) != 2 * M)
        throw ValidationError("GWR needs 2M samples");
    const double tau = std::numbers::ln2 / T;

    // Gaver functionals G_n, n = 1..M.
    std::vector<double> g0(M), gm(M, 0.0), gp(M, 0.0);
    for (int n = 1; n <= M; ++n) {
        // (2n)! / (n! (n-1)!) = n C(2n, n)
        double central = 1.0;
        for (int i = 1; i <= n; ++i)
            central = central * (n + i) / i;
        double factor = tau * n * central;
        double s = 0.0;
        double binom = 1.0;
        for (int i = 0; i <= n; ++i) {
            s += (i % 2 == 0 ? 1.0 : -1.0) * binom * F[n + i - 1];
            binom = binom * (n - i) / (i + 1);
        }
        g0[n - 1] = factor * s;
    }

    // Wynn's rho recursion; the odd columns hold the accelerated estimates.
    double best = g0[M - 1];
    for (int k = 0; k < M - 1; ++k) {
        for (int n = M - 2 - k; n >= 0; --n) {
            double diff = g0[n + 1] - g0[n];
            if (diff == 0.0)
                return {best, true};
            gp[n] = gm[n + 1] + (k + 1) / diff;
            if (k % 2 == 1 && n == M - 2 - k)
                best = gp[n];
        }
        for (int n = 0; n < M - k; ++n) {
            gm[n] = g0[n];
            g0[n] = gp[n];
        }
    }
    return {best, false};
}

GwrResult invert_gwr(const TransformEvaluator& ev, double T, int M)
{
    std::vector<double> q = gwr_nodes(T, M);
    std::vector<double> F(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        F[i] = ev.fn(cplx(q[i], 0.0)).real();
    return gwr_from_samples(F, T, M);
}

} // namespace dbarrier
