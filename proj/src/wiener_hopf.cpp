#include "dbarrier/wiener_hopf.hpp"

#include "dbarrier/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dbarrier {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

Eigen::VectorXcd psi_vector(const LevyModel& model, const ContourGrid& grid)
{
    Eigen::VectorXcd v(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        v[k] = psi(model, grid.points[k]);
    return v;
}

// ln(1 + psi/q) along the source grid, with the winding check.
Eigen::VectorXcd log_factor(const Eigen::VectorXcd& psi_src, cplx q)
{
    Eigen::VectorXcd out(psi_src.size());
    double prev = 0.0;
    for (Eigen::Index k = 0; k < psi_src.size(); ++k) {
        cplx w = 1.0 + psi_src[k] / q;
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) ||
            (w.imag() == 0.0 && w.real() <= 0.0))
            throw ContourError("1 + psi/q hits (-inf, 0] on a factor grid");
        cplx l = std::log(w);
        if (k > 0 && std::abs(l.imag() - prev) > pi)
            throw ContourError("log(1 + psi/q) winds across the branch cut along a factor grid");
        prev = l.imag();
        out[k] = l;
    }
    return out;
}

// zeta der_k / (eta_k (eta_k - xi_j)), rows over targets.
Eigen::MatrixXcd factor_kernel(const std::vector<cplx>& targets, const ContourGrid& src)
{
    Eigen::MatrixXcd m(targets.size(), src.size());
    for (std::size_t k = 0; k < src.size(); ++k) {
        cplx eta = src.points[k];
        cplx w = src.zeta * src.derivs[k] / eta;
        for (std::size_t j = 0; j < targets.size(); ++j)
            m(j, k) = w / (eta - targets[j]);
    }
    return m;
}

// Sign +1 for phi+ (source below), -1 for phi- (source above).
std::vector<cplx> factor_values(const Eigen::MatrixXcd& kernel, const Eigen::VectorXcd& logs,
                                const std::vector<cplx>& targets, double sign)
{
    Eigen::VectorXcd s = kernel * logs;
    std::vector<cplx> out(targets.size());
    for (std::size_t j = 0; j < targets.size(); ++j)
        out[j] = std::exp(-sign * targets[j] * s[j] / (2.0 * pi * I));
    return out;
}

void check_side(const std::vector<cplx>& targets, const ContourGrid& src, bool src_below)
{
    // The apex is the extreme ordinate of a sinh contour.
    double apex = src.contour.apex();
    for (const cplx& t : targets) {
        bool ok = src_below ? t.imag() > apex : t.imag() < apex;
        if (!ok)
            throw ContourError("factor target at Im = " + std::to_string(t.imag()) +
                               " is on the wrong side of the source contour");
    }
}

} // namespace

std::vector<cplx> phi_plus_direct(const LevyModel& model, cplx q, const std::vector<cplx>& targets,
                                  const ContourGrid& source)
{
    check_side(targets, source, true);
    return factor_values(factor_kernel(targets, source), log_factor(psi_vector(model, source), q),
                         targets, 1.0);
}

std::vector<cplx> phi_minus_direct(const LevyModel& model, cplx q, const std::vector<cplx>& targets,
                                   const ContourGrid& source)
{
    check_side(targets, source, false);
    return factor_values(factor_kernel(targets, source), log_factor(psi_vector(model, source), q),
                         targets, -1.0);
}

cplx phi_minus_at(const LevyModel& model, cplx q, cplx xi0, const ContourGrid& source)
{
    return phi_minus_direct(model, q, {xi0}, source).front();
}

void phi_cross_via_reciprocal(WhfTables& t, const std::vector<cplx>& psi_on_Lplus,
                              const std::vector<cplx>& psi_on_Lminus)
{
    const cplx q = t.q;
    auto guard = [&](cplx s) {
        if (std::abs(s) < 1e-300)
            throw ContourError("q + psi vanishes on a grid");
    };
    const std::size_t np = t.phi_plus_on_Lplus.size();
    const std::size_t nm = t.phi_minus_on_Lminus.size();
    t.phi_minus_on_Lplus.resize(np);
    t.ratio_mp_on_Lplus.resize(np);
    for (std::size_t k = 0; k < np; ++k) {
        cplx s = q + psi_on_Lplus[k];
        guard(s);
        cplx f = s / q;
        cplx pp = t.phi_plus_on_Lplus[k];
        t.phi_minus_on_Lplus[k] = 1.0 / (f * pp);
        t.ratio_mp_on_Lplus[k] = 1.0 / (f * pp * pp);
    }
    t.phi_plus_on_Lminus.resize(nm);
    t.ratio_pm_on_Lminus.resize(nm);
    for (std::size_t k = 0; k < nm; ++k) {
        cplx s = q + psi_on_Lminus[k];
        guard(s);
        cplx f = s / q;
        cplx pm = t.phi_minus_on_Lminus[k];
        t.phi_plus_on_Lminus[k] = 1.0 / (f * pm);
        t.ratio_pm_on_Lminus[k] = 1.0 / (f * pm * pm);
    }
}

WienerHopfSolver::WienerHopfSolver(const LevyModel& model, const ContourSet& g, bool need_minus_i)
    : model_(model), xi_plus_(g.L_plus.points), xi_minus_(g.L_minus.points)
{
    check_side(xi_plus_, g.L_minus_fine, true);
    check_side(xi_minus_, g.L_plus_fine, false);
    psi_plus_.resize(xi_plus_.size());
    psi_minus_.resize(xi_minus_.size());
    for (std::size_t k = 0; k < xi_plus_.size(); ++k)
        psi_plus_[k] = psi(model, xi_plus_[k]);
    for (std::size_t k = 0; k < xi_minus_.size(); ++k)
        psi_minus_[k] = psi(model, xi_minus_[k]);
    psi_plus_fine_ = psi_vector(model, g.L_plus_fine);
    psi_minus_fine_ = psi_vector(model, g.L_minus_fine);
    kernel_plus_ = factor_kernel(xi_plus_, g.L_minus_fine);
    kernel_minus_ = factor_kernel(xi_minus_, g.L_plus_fine);
    if (need_minus_i) {
        const std::vector<cplx> mi{cplx(0.0, -1.0)};
        check_side(mi, g.L_plus_fine, false);
        kernel_minus_i_ = factor_kernel(mi, g.L_plus_fine).row(0);
    }
}

WhfTables WienerHopfSolver::tables(cplx q) const
{
    WhfTables t;
    t.q = q;
    Eigen::VectorXcd log_minus = log_factor(psi_minus_fine_, q);
    Eigen::VectorXcd log_plus = log_factor(psi_plus_fine_, q);
    t.phi_plus_on_Lplus = factor_values(kernel_plus_, log_minus, xi_plus_, 1.0);
    t.phi_minus_on_Lminus = factor_values(kernel_minus_, log_plus, xi_minus_, -1.0);
    if (kernel_minus_i_) {
        cplx s = (*kernel_minus_i_ * log_plus)(0);
        t.phi_minus_at_minus_i = std::exp(cplx(0.0, -1.0) * s / (2.0 * pi * I));
    }
    phi_cross_via_reciprocal(t, psi_plus_, psi_minus_);
    return t;
}

} // namespace dbarrier
