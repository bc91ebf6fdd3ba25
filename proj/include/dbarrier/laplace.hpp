#pragma once

#include "dbarrier/contours.hpp"
#include "dbarrier/levy.hpp"

#include <functional>
#include <span>
#include <vector>

namespace dbarrier {

// A Laplace transform q -> f~(q) of a real-valued function of time.
struct TransformEvaluator {
    std::function<cplx(cplx)> fn;
    // True when fn is only defined for real positive q.
    bool real_only = false;
};

// f(T) = (zeta b / pi) Re sum_{k>=0} w_k exp(T q_k) f~(q_k) cosh(i omega + y_k), w_0 = 1/2.
double invert_sinh(const TransformEvaluator& ev, double T, const BromwichGrid& grid);
// Same sum with precomputed values f~(q_k) at the grid nodes.
double sinh_inversion_sum(const BromwichGrid& grid, double T, std::span<const cplx> values);

struct GwrResult {
    double value;
    // The rho table hit a zero difference and an earlier diagonal was returned.
    bool degraded;
};

// Nodes q_i = i ln2 / T, i = 1..2M.
std::vector<double> gwr_nodes(double T, int M);
GwrResult gwr_from_samples(std::span<const double> samples, double T, int M);
GwrResult invert_gwr(const TransformEvaluator& ev, double T, int M = 8);

} // namespace dbarrier
