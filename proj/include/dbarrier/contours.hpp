#pragma once

#include "dbarrier/levy.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace dbarrier {

// xi(y) = i omega1 + b sinh(i omega + y)
struct SinhContour {
    double omega1 = 0.0;
    double b = 1.0;
    double omega = 0.0;

    cplx point(double y) const;
    cplx derivative(double y) const;
    // Im xi(0); the point closest to the real axis.
    double apex() const { return omega1 + b * std::sin(omega); }
};

struct MapPoint {
    cplx xi;
    cplx derivative;
};

MapPoint map_point(const SinhContour& contour, double y);

// Truncated uniform trapezoid grid y_k = zeta k, k = -N..N.
struct ContourGrid {
    SinhContour contour;
    double zeta = 0.0;
    int n_half = 0;
    std::vector<cplx> points;
    std::vector<cplx> derivs;

    std::size_t size() const { return points.size(); }
};

ContourGrid make_grid(const SinhContour& contour, double zeta, int n_half);

// q(y) = sigma + i b sinh(i omega + y), omega in (0, pi/2).
struct BromwichContour {
    double sigma = 1.0;
    double b = 1.0;
    double omega = 0.0;

    cplx point(double y) const;
    // dq/dy = i b cosh(i omega + y)
    cplx derivative(double y) const;
};

// Half grid y_k = zeta k, k = 0..N; the other half follows by conjugation.
struct BromwichGrid {
    BromwichContour contour;
    double zeta = 0.0;
    int n = 0;
    std::vector<cplx> points;
    std::vector<cplx> derivs;
};

BromwichGrid make_bromwich_grid(const BromwichContour& contour, double zeta, int n);

struct Truncation {
    double lambda;
    int n;
};

// Smallest Lambda with exp(-b distance kappa sin|omega| e^Lambda) < eps and
// N = ceil(Lambda / zeta).
Truncation select_truncation(double b, double omega, double distance, double eps, double kappa,
                             double zeta);

// zeta = 2 pi d / ln(10 / eps)
double select_step(double strip_half_width, double eps);

// Sinh contour of angle omega (sign selects the orientation) whose apex
// ordinate sweeps exactly [lo, hi] as the angle moves over [|omega|-d, |omega|+d].
SinhContour contour_through_band(double lo, double hi, double omega, double d);

// Sinh-deformed Bromwich grid for maturity T.  The ordinate sigma = max(1, 1/T)
// and b sin(omega_l) = sigma/2; truncation makes exp(T Re q) < eps.
BromwichGrid default_bromwich_grid(double T, double omega_l, double d_l, double eps);

enum class LaplaceMethod { SinhLaplace, Gwr };
enum class Variant { A, B };

// Tuning knobs of the contour families.
struct ContourParams {
    double omega_cap = 0.39269908169872414; // pi/8
    double omega_l = 0.6283185307179586;    // pi/5
    double d_fraction = 0.8;
    double kappa = 0.4;
    double fine_step_ratio = 0.5;
    // Multiplies every step size; 1 for production, 0.5 in convergence studies.
    double step_scale = 1.0;
    double eps = 1e-15;
};

ContourParams default_params(Variant variant);

struct ContourGeometry {
    double h_minus = 0.0;
    double h_plus = 0.0;
    // Smallest distance from a spot (or strike) to a barrier.
    double min_distance = 0.0;
    // The minus contour must pass below -i (call payoffs).
    bool below_minus_i = false;
    double T = 1.0;
};

struct ContourSet {
    ContourGrid L_plus;
    ContourGrid L_minus;
    ContourGrid L_plus_fine;
    ContourGrid L_minus_fine;
    std::optional<BromwichGrid> bromwich;
    double d = 0.0;
    // min over L+ points of Im(eta - apex of L-) / (1 + |eta|)
    double separation = 0.0;
};

ContourSet default_contour_set(const LevyModel& model, const ContourGeometry& geometry,
                               LaplaceMethod method, Variant variant);
ContourSet default_contour_set(const LevyModel& model, const ContourGeometry& geometry,
                               LaplaceMethod method, const ContourParams& params);

// Checks 1 + psi(xi_k)/q is finite and off (-inf, 0] on every point of the grid.
void validate_grid_for_q(const LevyModel& model, const ContourGrid& grid, cplx q);

// exp(z) with underflow to 0 below Re z = -745 and a ContourError above 700.
cplx guarded_exp(cplx z);

} // namespace dbarrier
