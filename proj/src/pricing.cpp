#include "dbarrier/pricing.hpp"

#include "dbarrier/errors.hpp"
#include "dbarrier/european.hpp"
#include "dbarrier/laplace.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <thread>

namespace dbarrier {

namespace {

// Runs fn(0..n-1) on up to `threads` workers.  Each index writes its own
// slot, so results do not depend on scheduling; the exception of the lowest
// failing index is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn)
{
    std::vector<std::exception_ptr> errors(n);
    auto guarded = [&](std::size_t i) {
        try {
            fn(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            guarded(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++)
                    guarded(i);
            });
        for (auto& t : pool)
            t.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

struct VariantOutput {
    std::vector<double> values;
    GridSizes sizes;
    bool degraded = false;
};

double min_distance(const PriceRequest& req, const std::vector<double>& xs)
{
    const PayoffSpec& p = req.payoff;
    double d = std::numeric_limits<double>::infinity();
    for (double x : xs)
        d = std::min({d, x - p.h_minus, p.h_plus - x});
    if (p.has_strike())
        d = std::min({d, p.a - p.h_minus, p.h_plus - p.a});
    return d;
}

double european_part(const PriceRequest& req, double x)
{
    switch (req.payoff.kind) {
    case PayoffKind::NoTouch:
        return euro_constant(req.T, x);
    case PayoffKind::DigitalPut:
        return euro_digital(req.model, req.payoff.a, req.T, x, req.tolerance);
    case PayoffKind::Call:
        return euro_call(req.model, req.payoff.a, req.T, x, req.tolerance);
    }
    return 0.0;
}

VariantOutput run_variant(const PriceRequest& req, const std::vector<double>& xs, Method method,
                          SeriesBlock block, Variant variant)
{
    ContourParams params = default_params(variant);
    params.eps = req.tolerance;
    params.step_scale = req.step_scale;

    ContourGeometry geom;
    geom.h_minus = req.payoff.h_minus;
    geom.h_plus = req.payoff.h_plus;
    geom.min_distance = min_distance(req, xs);
    geom.below_minus_i = req.payoff.kind == PayoffKind::Call;
    geom.T = req.T;

    const LaplaceMethod lm = method == Method::Gwr ? LaplaceMethod::Gwr : LaplaceMethod::SinhLaplace;
    ContourSet grids = default_contour_set(req.model, geom, lm, params);
    BarrierEngine engine(req.model, req.payoff, grids, xs);
    const EngineOptions options{block, req.M0};

    VariantOutput out;
    out.sizes.n_plus = static_cast<int>(grids.L_plus.size());
    out.sizes.n_minus = static_cast<int>(grids.L_minus.size());
    out.sizes.n_plus_fine = static_cast<int>(grids.L_plus_fine.size());
    out.sizes.n_minus_fine = static_cast<int>(grids.L_minus_fine.size());

    std::vector<cplx> nodes;
    if (lm == LaplaceMethod::SinhLaplace) {
        nodes = grids.bromwich->points;
    } else {
        for (double q : gwr_nodes(req.T, req.gwr_M))
            nodes.emplace_back(q, 0.0);
    }
    out.sizes.n_laplace = static_cast<int>(nodes.size());

    std::vector<std::vector<cplx>> transforms(nodes.size());
    parallel_for(nodes.size(), req.threads,
                 [&](std::size_t k) { transforms[k] = engine.transform(nodes[k], options); });

    out.values.resize(xs.size());
    std::vector<cplx> column(nodes.size());
    std::vector<double> samples(nodes.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double v1;
        if (lm == LaplaceMethod::SinhLaplace) {
            for (std::size_t k = 0; k < nodes.size(); ++k)
                column[k] = transforms[k][i] / nodes[k];
            v1 = sinh_inversion_sum(*grids.bromwich, req.T, column);
        } else {
            for (std::size_t k = 0; k < nodes.size(); ++k)
                samples[k] = (transforms[k][i] / nodes[k]).real();
            GwrResult r = gwr_from_samples(samples, req.T, req.gwr_M);
            out.degraded = out.degraded || r.degraded;
            v1 = r.value;
        }
        out.values[i] = european_part(req, xs[i]) + v1;
    }
    return out;
}

} // namespace

std::string method_name(Method method)
{
    switch (method) {
    case Method::SinhLaplace:
        return "sinh";
    case Method::Gwr:
        return "gwr";
    case Method::Auto:
        return "auto";
    }
    return "unknown";
}

Method parse_method(const std::string& name)
{
    if (name == "sinh")
        return Method::SinhLaplace;
    if (name == "gwr")
        return Method::Gwr;
    if (name == "auto")
        return Method::Auto;
    throw ValidationError("unknown method '" + name + "' (expected sinh, gwr or auto)");
}

void PriceRequest::validate() const
{
    model.validate();
    payoff.validate();
    if (!(T > 0.0) || !std::isfinite(T))
        throw ValidationError("maturity must be positive");
    if (!(tolerance >= 1e-16 && tolerance <= 1e-3))
        throw ValidationError("tolerance must lie in [1e-16, 1e-3]");
    if (M0 < 1 || M0 > 200)
        throw ValidationError("M0 must lie in [1, 200]");
    if (gwr_M < 2 || gwr_M > 30)
        throw ValidationError("GWR M must lie in [2, 30]");
    if (!(step_scale > 0.0 && step_scale <= 1.0))
        throw ValidationError("step_scale must lie in (0, 1]");
    for (double x : xs)
        if (!std::isfinite(x))
            throw ValidationError("spots must be finite");
}

SeriesBlock auto_block(const LevyModel& model, double T)
{
    double threshold = model.order() >= 1.0 ? 1.0 : 3.0;
    return T >= threshold ? SeriesBlock::ResolventSolve : SeriesBlock::Truncated;
}

Method resolve_method(const LevyModel& model, Method method)
{
    if (method != Method::Auto)
        return method;
    return model.order() < 1.0 && model.mu != 0.0 ? Method::Gwr : Method::SinhLaplace;
}

PriceReport price(const PriceRequest& req)
{
    const auto start = std::chrono::steady_clock::now();
    req.validate();

    PriceReport rep;
    rep.xs = req.xs;
    rep.values.assign(req.xs.size(), 0.0);
    rep.error_estimates.assign(req.xs.size(), 0.0);
    rep.knocked.assign(req.xs.size(), false);
    rep.method = resolve_method(req.model, req.method);
    rep.block = req.block.value_or(auto_block(req.model, req.T));

    std::vector<double> inside;
    std::vector<std::size_t> index;
    for (std::size_t i = 0; i < req.xs.size(); ++i) {
        double x = req.xs[i];
        if (x > req.payoff.h_minus && x < req.payoff.h_plus) {
            inside.push_back(x);
            index.push_back(i);
        } else {
            rep.knocked[i] = true;
        }
    }

    if (!inside.empty()) {
        auto run = [&](Variant v) {
            if (rep.method == Method::SinhLaplace) {
                try {
                    return run_variant(req, inside, Method::SinhLaplace, rep.block, v);
                } catch (const DivergenceError&) {
                    rep.fell_back = true;
                }
            }
            return run_variant(req, inside, Method::Gwr, rep.block, v);
        };
        VariantOutput a = run(Variant::A);
        if (rep.fell_back)
            rep.method = Method::Gwr;
        rep.sizes = a.sizes;
        rep.degraded = a.degraded;
        std::vector<double> errors(inside.size(), 0.0);
        if (req.variants == VariantPolicy::DualRun) {
            VariantOutput b = run(Variant::B);
            rep.degraded = rep.degraded || b.degraded;
            for (std::size_t i = 0; i < inside.size(); ++i)
                errors[i] = std::abs(a.values[i] - b.values[i]);
        }
        for (std::size_t i = 0; i < inside.size(); ++i) {
            rep.values[index[i]] = a.values[i];
            rep.error_estimates[index[i]] = errors[i];
        }
    }

    rep.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::vector<CurvePoint> price_curve(const PriceRequest& req, bool normalize)
{
    PriceReport rep = price(req);
    const double half_nu = 0.5 * req.model.order();
    std::vector<CurvePoint> out;
    out.reserve(rep.xs.size());
    for (std::size_t i = 0; i < rep.xs.size(); ++i) {
        CurvePoint p{rep.xs[i], rep.values[i], rep.error_estimates[i],
                     std::numeric_limits<double>::quiet_NaN(), rep.knocked[i]};
        if (normalize && !p.knocked)
            p.normalized = p.value / std::pow(p.x - req.payoff.h_minus, half_nu);
        out.push_back(p);
    }
    return out;
}

std::vector<double> interior_grid(double h_minus, double h_plus, int n)
{
    if (!(h_minus < h_plus) || n < 1)
        throw ValidationError("interior grid needs h_minus < h_plus and n >= 1");
    std::vector<double> xs(n);
    const double step = (h_plus - h_minus) / (n + 1);
    for (int i = 0; i < n; ++i)
        xs[i] = h_minus + (i + 1) * step;
    return xs;
}

} // namespace dbarrier
