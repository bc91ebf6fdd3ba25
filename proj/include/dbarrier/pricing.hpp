#pragma once

#include "dbarrier/barrier_engine.hpp"
#include "dbarrier/contours.hpp"
#include "dbarrier/levy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dbarrier {

enum class Method { SinhLaplace, Gwr, Auto };
enum class VariantPolicy { Single, DualRun };

std::string method_name(Method method);
Method parse_method(const std::string& name);

struct PriceRequest {
    LevyModel model;
    PayoffSpec payoff;
    double T = 1.0;
    std::vector<double> xs;
    Method method = Method::Auto;
    // Target accuracy of every quadrature.
    double tolerance = 1e-15;
    VariantPolicy variants = VariantPolicy::Single;
    // Unset: chosen from (nu, T).
    std::optional<SeriesBlock> block;
    int M0 = 9;
    int gwr_M = 8;
    unsigned threads = 1;
    // Scales every step size (1 in production).
    double step_scale = 1.0;

    void validate() const;
};

struct GridSizes {
    int n_plus = 0;
    int n_minus = 0;
    int n_plus_fine = 0;
    int n_minus_fine = 0;
    int n_laplace = 0;
};

struct PriceReport {
    std::vector<double> xs;
    std::vector<double> values;
    // |variant A - variant B| under dual-run, otherwise 0.
    std::vector<double> error_estimates;
    std::vector<bool> knocked;
    Method method = Method::SinhLaplace;
    SeriesBlock block = SeriesBlock::Truncated;
    GridSizes sizes;
    double wall_ms = 0.0;
    // GWR returned an early rho-table entry for some spot.
    bool degraded = false;
    // Sinh-Laplace diverged and GWR was used instead.
    bool fell_back = false;
};

// Resolvent summation for long maturities, the truncated series otherwise.
SeriesBlock auto_block(const LevyModel& model, double T);
Method resolve_method(const LevyModel& model, Method method);

PriceReport price(const PriceRequest& request);

struct CurvePoint {
    double x;
    double value;
    double error_estimate;
    // value / (x - h_minus)^{nu/2}; NaN unless normalization was requested.
    double normalized;
    bool knocked;
};

std::vector<CurvePoint> price_curve(const PriceRequest& request, bool normalize);

// n equally spaced interior points of (h_minus, h_plus).
std::vector<double> interior_grid(double h_minus, double h_plus, int n);

} // namespace dbarrier
