#include "dbarrier/barrier_engine.hpp"

#include "dbarrier/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dbarrier {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

Eigen::VectorXcd to_eigen(const std::vector<cplx>& v)
{
    return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double inf_norm(const Eigen::VectorXcd& v)
{
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

std::string q_text(cplx q)
{
    std::ostringstream os;
    os.precision(6);
    os << "q = " << q.real() << (q.imag() < 0 ? " - " : " + ") << std::abs(q.imag()) << "i";
    return os.str();
}

} // namespace

std::string payoff_name(PayoffKind kind)
{
    switch (kind) {
    case PayoffKind::NoTouch:
        return "no_touch";
    case PayoffKind::DigitalPut:
        return "digital_put";
    case PayoffKind::Call:
        return "call";
    }
    return "unknown";
}

std::string block_name(SeriesBlock block)
{
    switch (block) {
    case SeriesBlock::Truncated:
        return "truncated";
    case SeriesBlock::ResolventInverse:
        return "resolvent_inverse";
    case SeriesBlock::ResolventSolve:
        return "resolvent_solve";
    }
    return "unknown";
}

PayoffSpec PayoffSpec::no_touch(double h_minus, double h_plus)
{
    PayoffSpec p{PayoffKind::NoTouch, h_minus, h_plus, 0.0};
    p.validate();
    return p;
}

PayoffSpec PayoffSpec::digital_put(double a, double h_minus, double h_plus)
{
    PayoffSpec p{PayoffKind::DigitalPut, h_minus, h_plus, a};
    p.validate();
    return p;
}

PayoffSpec PayoffSpec::call(double a, double h_minus, double h_plus)
{
    PayoffSpec p{PayoffKind::Call, h_minus, h_plus, a};
    p.validate();
    return p;
}

void PayoffSpec::validate() const
{
    if (!std::isfinite(h_minus) || !std::isfinite(h_plus) || !(h_minus < h_plus))
        throw ValidationError("require finite barriers with h_minus < h_plus");
    if (has_strike() && !(h_minus < a && a < h_plus))
        throw ValidationError("require h_minus < a < h_plus");
}

CauchyMatrices build_cauchy_matrices(const ContourSet& g)
{
    const auto& xp = g.L_plus.points;
    const auto& xm = g.L_minus.points;
    CauchyMatrices c;
    c.D_pm.resize(xp.size(), xm.size());
    c.D_mp.resize(xm.size(), xp.size());
    for (std::size_t j = 0; j < xp.size(); ++j)
        for (std::size_t k = 0; k < xm.size(); ++k) {
            c.D_pm(j, k) = 1.0 / (xm[k] - xp[j]);
            c.D_mp(k, j) = 1.0 / (xp[j] - xm[k]);
        }
    return c;
}

WhatPair next_what(const WhatPair& w, const TransferMatrices& K)
{
    WhatPair n;
    n.w_plus = I * (K.K_mp * w.w_minus);
    n.w_minus = -I * (K.K_pm * w.w_plus);
    n.j = w.j + 1;
    return n;
}

WhatPair sum_series_truncated(const WhatPair& w1, const TransferMatrices& K, int M0,
                              SeriesDiagnostics* diag)
{
    if (M0 < 1)
        throw ValidationError("the series needs at least one term");
    // u_j = (-1)^j W_j obeys u+_{j+1} = -i K_mp u-_j and u-_{j+1} = i K_pm u+_j.
    Eigen::VectorXcd up = -w1.w_plus;
    Eigen::VectorXcd um = -w1.w_minus;
    WhatPair sum{up, um, M0, true};
    const double first = std::max(inf_norm(up), inf_norm(um));
    double prev = first;
    int growth = 0;
    for (int j = 2; j <= M0; ++j) {
        Eigen::VectorXcd np = -I * (K.K_mp * um);
        Eigen::VectorXcd nm = I * (K.K_pm * up);
        up.swap(np);
        um.swap(nm);
        sum.w_plus += up;
        sum.w_minus += um;
        double norm = std::max(inf_norm(up), inf_norm(um));
        growth = norm > prev ? growth + 1 : 0;
        if (growth >= 3)
            throw DivergenceError("corridor too narrow for this q: series increments keep growing");
        prev = norm;
    }
    if (M0 > 1 && prev > 3e-2 * first)
        throw DivergenceError("series not converged after " + std::to_string(M0) +
                              " terms; use a resolvent block");
    if (diag) {
        diag->terms = M0;
        diag->last_increment = prev;
    }
    return sum;
}

double spectral_radius_estimate(const Eigen::MatrixXcd& A, int iterations)
{
    if (A.rows() == 0)
        return 0.0;
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(A.rows()) / std::sqrt(double(A.rows()));
    double ratio = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Eigen::VectorXcd w = A * v;
        double n = w.norm();
        if (n == 0.0)
            return 0.0;
        ratio = n;
        v = w / n;
    }
    return ratio;
}

WhatPair sum_series_resolvent(const WhatPair& w1, const WhatPair& w2, const TransferMatrices& K,
                              SeriesBlock mode)
{
    if (mode == SeriesBlock::Truncated)
        throw ValidationError("resolvent summation needs a resolvent mode");
    const Eigen::Index nm = K.K_mp.rows();
    const Eigen::Index np = K.K_pm.rows();
    Eigen::MatrixXcd A = K.K_mp * K.K_pm; // L- -> L-
    double rho = spectral_radius_estimate(A);
    if (!(rho < 1.0))
        throw DivergenceError("corridor too narrow for this q: spectral radius estimate " +
                              std::to_string(rho));

    WhatPair s;
    s.summed = true;
    s.j = 0;
    Eigen::MatrixXcd IA = Eigen::MatrixXcd::Identity(nm, nm) - A;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(IA);
    if (mode == SeriesBlock::ResolventSolve) {
        s.w_plus = lu.solve(w2.w_plus - w1.w_plus);
        // S- = -W-_1 + i K_pm S+
        s.w_minus = -w1.w_minus + I * (K.K_pm * s.w_plus);
    } else {
        Eigen::MatrixXcd B = K.K_pm * K.K_mp; // L+ -> L+
        Eigen::MatrixXcd inv_a = lu.inverse();
        Eigen::MatrixXcd inv_b = (Eigen::MatrixXcd::Identity(np, np) - B).partialPivLu().inverse();
        s.w_plus = inv_a * (w2.w_plus - w1.w_plus);
        s.w_minus = inv_b * (w2.w_minus - w1.w_minus);
    }
    if (!s.w_plus.allFinite() || !s.w_minus.allFinite())
        throw NumericalError("singular resolvent system");
    return s;
}

BarrierEngine::BarrierEngine(const LevyModel& model, const PayoffSpec& payoff, const ContourSet& grids,
                             std::vector<double> xs)
    : model_(model), payoff_(payoff), grids_(grids), xs_(std::move(xs)),
      whf_(model, grids, payoff.kind == PayoffKind::Call), cauchy_(build_cauchy_matrices(grids))
{
    payoff_.validate();
    for (double x : xs_)
        if (!(payoff_.h_minus < x && x < payoff_.h_plus))
            throw ValidationError("engine spots must lie strictly inside the corridor");

    const ContourGrid& Lp = grids_.L_plus;
    const ContourGrid& Lm = grids_.L_minus;
    const double hm = payoff_.h_minus;
    const double hp = payoff_.h_plus;
    const double a = payoff_.a;
    const cplx cp = Lp.zeta / (2.0 * pi);
    const cplx cm = Lm.zeta / (2.0 * pi);
    const auto np = static_cast<Eigen::Index>(Lp.size());
    const auto nm = static_cast<Eigen::Index>(Lm.size());

    transfer_plus_.resize(np);
    for (Eigen::Index k = 0; k < np; ++k)
        transfer_plus_[k] = cp * guarded_exp(I * (hp - hm) * Lp.points[k]) * Lp.derivs[k];
    transfer_minus_.resize(nm);
    for (Eigen::Index k = 0; k < nm; ++k)
        transfer_minus_[k] = cm * guarded_exp(-I * (hp - hm) * Lm.points[k]) * Lm.derivs[k];

    if (payoff_.has_strike()) {
        const bool call = payoff_.kind == PayoffKind::Call;
        auto denom = [call](cplx eta) { return call ? eta * (eta + I) : eta; };
        strike_plus_.resize(np);
        for (Eigen::Index k = 0; k < np; ++k) {
            cplx eta = Lp.points[k];
            strike_plus_[k] = cp * guarded_exp(I * (hp - a) * eta) / denom(eta) * Lp.derivs[k];
        }
        strike_minus_.resize(nm);
        for (Eigen::Index k = 0; k < nm; ++k) {
            cplx eta = Lm.points[k];
            strike_minus_[k] = cm * guarded_exp(I * (hm - a) * eta) / denom(eta) * Lm.derivs[k];
        }
    }

    const auto nx = static_cast<Eigen::Index>(xs_.size());
    final_plus_.resize(nx, nm);
    final_minus_.resize(nx, np);
    for (Eigen::Index i = 0; i < nx; ++i) {
        const double x = xs_[i];
        for (Eigen::Index k = 0; k < nm; ++k)
            final_plus_(i, k) = cm * guarded_exp(I * (x - hp) * Lm.points[k]) * Lm.derivs[k];
        for (Eigen::Index k = 0; k < np; ++k)
            final_minus_(i, k) = cp * guarded_exp(I * (x - hm) * Lp.points[k]) * Lp.derivs[k];
    }
}

WhatPair BarrierEngine::initial_what(const WhfTables& whf) const
{
    const auto& xp = grids_.L_plus.points;
    const auto& xm = grids_.L_minus.points;
    const auto np = static_cast<Eigen::Index>(xp.size());
    const auto nm = static_cast<Eigen::Index>(xm.size());
    WhatPair w;
    w.j = 1;
    w.w_plus.resize(nm);
    w.w_minus.resize(np);

    switch (payoff_.kind) {
    case PayoffKind::NoTouch:
        for (Eigen::Index k = 0; k < nm; ++k)
            w.w_plus[k] = -I / xm[k];
        for (Eigen::Index k = 0; k < np; ++k)
            w.w_minus[k] = I / xp[k];
        break;
    case PayoffKind::DigitalPut: {
        Eigen::VectorXcd vp = strike_plus_.cwiseProduct(to_eigen(whf.phi_minus_on_Lplus));
        Eigen::VectorXcd vm = strike_minus_.cwiseProduct(to_eigen(whf.phi_plus_on_Lminus));
        w.w_plus = -(cauchy_.D_mp * vp);
        w.w_minus = cauchy_.D_pm * vm;
        for (Eigen::Index k = 0; k < np; ++k)
            w.w_minus[k] += I / xp[k];
        break;
    }
    case PayoffKind::Call: {
        if (!whf.phi_minus_at_minus_i)
            throw NumericalError("call payoff needs phi-(-i)");
        const double ea = std::exp(payoff_.a);
        const cplx lead = *whf.phi_minus_at_minus_i * std::exp(payoff_.h_plus);
        Eigen::VectorXcd vp = strike_plus_.cwiseProduct(to_eigen(whf.phi_minus_on_Lplus));
        Eigen::VectorXcd vm = strike_minus_.cwiseProduct(to_eigen(whf.phi_plus_on_Lminus));
        w.w_plus = (-I * ea) * (cauchy_.D_mp * vp);
        for (Eigen::Index k = 0; k < nm; ++k)
            w.w_plus[k] += lead / (I * xm[k] - 1.0) - ea / (I * xm[k]);
        w.w_minus = (I * ea) * (cauchy_.D_pm * vm);
        break;
    }
    }
    return w;
}

TransferMatrices BarrierEngine::build_transfer_matrices(const WhfTables& whf) const
{
    TransferMatrices K;
    Eigen::VectorXcd wp = transfer_plus_.cwiseProduct(to_eigen(whf.ratio_mp_on_Lplus));
    Eigen::VectorXcd wm = transfer_minus_.cwiseProduct(to_eigen(whf.ratio_pm_on_Lminus));
    K.K_mp = cauchy_.D_mp * wp.asDiagonal();
    K.K_pm = cauchy_.D_pm * wm.asDiagonal();
    if (!K.K_mp.allFinite() || !K.K_pm.allFinite())
        throw ContourError("non-finite transfer matrix entries at " + q_text(whf.q));
    return K;
}

std::vector<cplx> BarrierEngine::correction_transform(const WhatPair& s, const WhfTables& whf) const
{
    Eigen::VectorXcd vp = s.w_plus.cwiseProduct(to_eigen(whf.phi_plus_on_Lminus));
    Eigen::VectorXcd vm = s.w_minus.cwiseProduct(to_eigen(whf.phi_minus_on_Lplus));
    Eigen::VectorXcd v = final_plus_ * vp + final_minus_ * vm;
    return std::vector<cplx>(v.data(), v.data() + v.size());
}

std::vector<cplx> BarrierEngine::transform(cplx q, const EngineOptions& opt) const
{
    try {
        WhfTables whf = whf_.tables(q);
        WhatPair w1 = initial_what(whf);
        TransferMatrices K = build_transfer_matrices(whf);
        WhatPair s = opt.block == SeriesBlock::Truncated
                         ? sum_series_truncated(w1, K, opt.M0)
                         : sum_series_resolvent(w1, next_what(w1, K), K, opt.block);
        return correction_transform(s, whf);
    } catch (const DivergenceError& e) {
        throw DivergenceError(std::string(e.what()) + " (" + q_text(q) + ")");
    } catch (const ContourError& e) {
        throw ContourError(std::string(e.what()) + " (" + q_text(q) + ")");
    } catch (const NumericalError& e) {
        throw NumericalError(std::string(e.what()) + " (" + q_text(q) + ")");
    }
}

} // namespace dbarrier
