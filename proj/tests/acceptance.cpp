// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "dbarrier/contours.hpp"
#include "dbarrier/european.hpp"
#include "dbarrier/laplace.hpp"
#include "dbarrier/pricing.hpp"
#include "dbarrier/reference_tables.hpp"
#include "dbarrier/wiener_hopf.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

using namespace dbarrier;

namespace {

constexpr double pi = std::numbers::pi;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            if (!detail.empty())
                detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what)
    {
        if (!detail.empty())
            detail += "; ";
        detail += what;
    }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[200];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

struct TableRun {
    double max_dev = 0.0;
    double max_rel_dev = 0.0;
    double max_dual = 0.0;
    double max_ms = 0.0;
    double total_ms = 0.0;
    std::vector<std::vector<double>> values;
};

TableRun run_table(const ReferenceTable& table, const std::vector<double>& Ts, Method method, bool dual,
                   std::optional<SeriesBlock> block = std::nullopt)
{
    TableRun out;
    for (const ReferenceRow& row : table.rows) {
        if (std::find(Ts.begin(), Ts.end(), row.T) == Ts.end())
            continue;
        PriceRequest r = reference_request(table, row.T);
        r.method = method;
        r.threads = 1;
        r.variants = dual ? VariantPolicy::DualRun : VariantPolicy::Single;
        if (block)
            r.block = block;
        PriceReport rep = price(r);
        out.values.push_back(rep.values);
        out.max_ms = std::max(out.max_ms, rep.wall_ms);
        out.total_ms += rep.wall_ms;
        for (std::size_t i = 0; i < rep.values.size(); ++i) {
            double dev = std::abs(rep.values[i] - row.values[i]);
            out.max_dev = std::max(out.max_dev, dev);
            out.max_rel_dev = std::max(out.max_rel_dev, dev / std::abs(row.values[i]));
            out.max_dual = std::max(out.max_dual, rep.error_estimates[i]);
        }
    }
    return out;
}

Check reproduction(const std::string& name, const std::vector<double>& Ts, double tol)
{
    Check c;
    TableRun r = run_table(reference_table(name), Ts, Method::SinhLaplace, true);
    c.require(r.max_dev <= tol, fmt("max deviation %.2e > %.0e", r.max_dev, tol));
    c.require(r.max_dual <= 1e-12, fmt("dual-run discrepancy %.2e > 1e-12", r.max_dual));
    c.require(r.max_ms <= 60000.0, fmt("slowest maturity %.0f ms > 60 s", r.max_ms));
    c.note(fmt("max deviation %.2e, dual-run %.2e, slowest maturity %.0f ms", r.max_dev, r.max_dual,
               r.max_ms));
    return c;
}

Check criterion_1() { return reproduction("table1", {0.004, 0.25, 1.0}, 1e-9); }
Check criterion_2() { return reproduction("table2", {0.004, 0.25, 3.0}, 1e-9); }
Check criterion_3() { return reproduction("table3", {0.004, 0.25, 1.0}, 1e-8); }

Check criterion_4()
{
    Check c;
    const ReferenceTable& t = reference_table("table5");
    TableRun shortT = run_table(t, {0.004, 0.25, 1.0}, Method::SinhLaplace, false);
    TableRun longT = run_table(t, {3.0}, Method::SinhLaplace, false, SeriesBlock::ResolventSolve);
    c.require(shortT.max_dev <= 1e-9, fmt("T <= 1 max deviation %.2e > 1e-9", shortT.max_dev));
    c.require(longT.max_rel_dev <= 1e-3, fmt("T = 3 relative deviation %.2e > 1e-3", longT.max_rel_dev));
    c.note(fmt("T <= 1 max deviation %.2e, T = 3 relative deviation %.2e", shortT.max_dev,
               longT.max_rel_dev));
    return c;
}

Check criterion_5()
{
    Check c;
    const ReferenceTable& t = reference_table("table6");
    PriceRequest r = reference_request(t, 5.0);
    r.xs = {0.0};
    r.block = SeriesBlock::ResolventSolve;
    double v = price(r).values[0];
    double dev = std::abs(v - 0.000630026253687271);
    c.require(dev <= 1e-8, fmt("deviation %.2e > 1e-8", dev));
    c.note(fmt("value %.15g, deviation %.2e", v, dev));
    return c;
}

Check criterion_6()
{
    Check c;
    double max_gap = 0.0, min_gap = 1.0, gwr_ms = 0.0, sinh_ms = 0.0;
    for (const char* name : {"table1", "table2"}) {
        const ReferenceTable& t = reference_table(name);
        std::vector<double> Ts;
        for (const auto& row : t.rows)
            Ts.push_back(row.T);
        TableRun s = run_table(t, Ts, Method::SinhLaplace, false);
        TableRun g = run_table(t, Ts, Method::Gwr, false);
        sinh_ms += s.total_ms;
        gwr_ms += g.total_ms;
        for (std::size_t i = 0; i < s.values.size(); ++i)
            for (std::size_t k = 0; k < s.values[i].size(); ++k) {
                double gap = std::abs(s.values[i][k] - g.values[i][k]);
                max_gap = std::max(max_gap, gap);
                min_gap = std::min(min_gap, gap);
            }
    }
    c.require(max_gap <= 1e-4, fmt("max |GWR - sinh| %.2e > 1e-4", max_gap));
    // Comparable runtime: GWR may not be more than 1.5x slower.
    c.require(gwr_ms <= 1.5 * sinh_ms, fmt("GWR %.0f ms vs sinh %.0f ms", gwr_ms, sinh_ms));
    c.note(fmt("|GWR - sinh| in [%.1e, %.1e]", min_gap, max_gap));
    c.note(fmt("GWR %.0f ms, sinh %.0f ms", gwr_ms, sinh_ms));
    return c;
}

double wh_residual(const LevyModel& m, const ContourSet& g, const std::vector<double>& qs)
{
    std::vector<cplx> xs;
    for (double x = -30.0; x <= 30.0; x += 0.25)
        xs.emplace_back(x, 0.0);
    double err = 0.0;
    for (double q : qs) {
        auto pp = phi_plus_direct(m, q, xs, g.L_minus_fine);
        auto pm = phi_minus_direct(m, q, xs, g.L_plus_fine);
        for (std::size_t k = 0; k < xs.size(); ++k)
            err = std::max(err, std::abs((1.0 + psi(m, xs[k]) / q) * pp[k] * pm[k] - 1.0));
    }
    return err;
}

Check criterion_7()
{
    Check c;
    const cplx I(0.0, 1.0);

    // Wiener-Hopf identity on the Table-1 grid sets, both variants.
    {
        LevyModel m = reference_model(1.2);
        double err = 0.0;
        for (double T : {0.004, 0.25, 1.0}) {
            std::vector<double> qs{1.0, 5.0, 25.0};
            for (double q : gwr_nodes(T, 8))
                qs.push_back(q);
            ContourGeometry geo{-0.05, 0.05, 0.01, false, T};
            for (LaplaceMethod lm : {LaplaceMethod::SinhLaplace, LaplaceMethod::Gwr})
                for (Variant v : {Variant::A, Variant::B})
                    err = std::max(err, wh_residual(m, default_contour_set(m, geo, lm, v), qs));
        }
        c.require(err <= 1e-12, fmt("WH identity residual %.2e > 1e-12", err));
        c.note(fmt("WH identity %.1e", err));
    }

    // Brownian factors kappa / (kappa -+ i xi).
    {
        LevyModel m = LevyModel::gaussian(std::sqrt(2.0));
        m.lambda_plus = 1.0;
        m.lambda_minus = -1.0;
        ContourGeometry geo{-0.05, 0.05, 0.01, false, 1.0};
        ContourSet g = default_contour_set(m, geo, LaplaceMethod::Gwr, Variant::A);
        auto pp = phi_plus_direct(m, 1.0, g.L_plus.points, g.L_minus_fine);
        auto pm = phi_minus_direct(m, 1.0, g.L_minus.points, g.L_plus_fine);
        double err = 0.0;
        for (std::size_t k = 0; k < pp.size(); ++k)
            err = std::max(err, std::abs(pp[k] - 1.0 / (1.0 - I * g.L_plus.points[k])));
        for (std::size_t k = 0; k < pm.size(); ++k)
            err = std::max(err, std::abs(pm[k] - 1.0 / (1.0 + I * g.L_minus.points[k])));
        c.require(err <= 1e-12, fmt("Brownian factor error %.2e > 1e-12", err));
        c.note(fmt("Brownian %.1e", err));
    }

    // Laplace known pairs.
    {
        auto grid = [](double T) { return default_bromwich_grid(T, pi / 5, 0.8 * pi / 5, 1e-15); };
        double es = 0.0;
        es = std::max(es, std::abs(invert_sinh({[](cplx q) { return 1.0 / q; }}, 1.0, grid(1.0)) - 1.0));
        es = std::max(es, std::abs(invert_sinh({[](cplx q) { return 1.0 / (q + 1.0); }}, 1.0, grid(1.0)) -
                                   std::exp(-1.0)));
        es = std::max(es, std::abs(invert_sinh({[](cplx q) { return 1.0 / (q * q); }}, 2.0, grid(2.0)) - 2.0));
        c.require(es <= 1e-12, fmt("sinh pair error %.2e > 1e-12", es));
        double eg = std::abs(invert_gwr({[](cplx q) { return q / (q * q + 1.0); }, true}, pi / 2).value);
        c.require(eg <= 1e-6, fmt("GWR oscillatory pair error %.2e > 1e-6", eg));
        c.note(fmt("sinh pairs %.1e, GWR oscillatory %.1e", es, eg));
    }

    // Mirror symmetry.
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
        auto a = price(r).values;
        auto b = price(s).values;
        double err = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            err = std::max(err, std::abs(a[i] - b[i]));
        c.require(err <= 1e-12, fmt("mirror symmetry gap %.2e > 1e-12", err));
        c.note(fmt("mirror %.1e", err));
    }

    // No-touch monotone in T and within [0, 1]; digital monotone in a.
    {
        LevyModel m = reference_model(1.2);
        std::vector<double> xs{-0.04, 0.0, 0.03};
        std::vector<double> prev(xs.size(), 1.0);
        bool ok = true;
        for (double T : {0.004, 0.05, 0.25, 0.5}) {
            PriceRequest r;
            r.model = m;
            r.payoff = PayoffSpec::no_touch(-0.05, 0.05);
            r.T = T;
            r.xs = xs;
            r.method = Method::SinhLaplace;
            auto v = price(r).values;
            for (std::size_t i = 0; i < v.size(); ++i) {
                ok = ok && v[i] >= 0.0 && v[i] <= 1.0 && v[i] <= prev[i];
                prev[i] = v[i];
            }
        }
        c.require(ok, "no-touch not monotone in T or outside [0, 1]");
        std::vector<double> dprev(xs.size(), 0.0);
        bool dok = true;
        for (double a : {-0.03, -0.01, 0.0, 0.02, 0.04}) {
            PriceRequest r;
            r.model = m;
            r.payoff = PayoffSpec::digital_put(a, -0.05, 0.05);
            r.T = 0.25;
            r.xs = xs;
            r.method = Method::SinhLaplace;
            auto v = price(r).values;
            for (std::size_t i = 0; i < v.size(); ++i) {
                dok = dok && v[i] >= dprev[i] - 1e-15;
                dprev[i] = v[i];
            }
        }
        c.require(dok, "digital not monotone in a");
    }

    // European oracles under the Gaussian model.
    {
        const double sigma = 0.3, mu = 0.05;
        LevyModel m = LevyModel::gaussian(sigma, mu);
        auto cdf = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
        double err = 0.0;
        for (double T : {0.01, 0.25, 1.0, 4.0})
            for (double x : {-0.3, -0.05, 0.0, 0.1, 0.4})
                for (double a : {-0.1, 0.0, 0.05}) {
                    double s = sigma * std::sqrt(T);
                    double mean = x + mu * T;
                    err = std::max(err, std::abs(euro_digital(m, a, T, x) - cdf((a - mean) / s)));
                    double call = std::exp(mean + 0.5 * s * s) * cdf((mean - a + s * s) / s) -
                                  std::exp(a) * cdf((mean - a) / s);
                    err = std::max(err, std::abs(euro_call(m, a, T, x) - call));
                }
        c.require(err <= 1e-10, fmt("European oracle error %.2e > 1e-10", err));
        c.note(fmt("European %.1e", err));
    }
    return c;
}

Check criterion_8()
{
    Check c;
    const ReferenceTable& t = reference_table("table1");
    PriceRequest base = reference_request(t, 0.25);
    PriceRequest fine = base;
    fine.step_scale = 0.5;
    auto a = price(base).values;
    auto b = price(fine).values;
    double dz = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        dz = std::max(dz, std::abs(a[i] - b[i]));
    c.require(dz <= 1e-12, fmt("halving zeta moved a price by %.2e > 1e-12", dz));

    double dm = 0.0;
    for (const char* name : {"table1", "table2", "table3", "table4", "table5", "table6"}) {
        const ReferenceTable& tt = reference_table(name);
        for (double T : {0.004, 0.25}) {
            PriceRequest r = reference_request(tt, T);
            r.block = SeriesBlock::Truncated;
            PriceRequest r12 = r;
            r12.M0 = 12;
            auto v9 = price(r).values;
            auto v12 = price(r12).values;
            for (std::size_t i = 0; i < v9.size(); ++i)
                dm = std::max(dm, std::abs(v9[i] - v12[i]));
        }
    }
    c.require(dm <= 1e-14, fmt("M0 9 -> 12 moved a price by %.2e > 1e-14", dm));
    c.note(fmt("zeta halving %.1e, M0 9 -> 12 %.1e", dz, dm));
    return c;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"1 table1 no-touch nu=1.2", criterion_1},
        {"2 table2 no-touch nu=0.2", criterion_2},
        {"3 table3 digital nu=1.2", criterion_3},
        {"4 table5 call nu=1.2", criterion_4},
        {"5 table6 call nu=0.2 T=5", criterion_5},
        {"6 GWR cross-check", criterion_6},
        {"7 property suite", criterion_7},
        {"8 convergence studies", criterion_8},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Check c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c = run();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %s (%.1f s): %s\n", c.ok ? "PASS" : "FAIL", name.c_str(), s, c.detail.c_str());
        std::fflush(stdout);
        failed += c.ok ? 0 : 1;
    }
    std::printf("acceptance: %d passed, %d failed\n", static_cast<int>(criteria.size()) - failed, failed);
    return failed == 0 ? 0 : 1;
}
