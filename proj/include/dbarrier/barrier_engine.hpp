#pragma once

#include "dbarrier/contours.hpp"
#include "dbarrier/levy.hpp"
#include "dbarrier/wiener_hopf.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace dbarrier {

enum class PayoffKind { NoTouch, DigitalPut, Call };

std::string payoff_name(PayoffKind kind);

struct PayoffSpec {
    PayoffKind kind = PayoffKind::NoTouch;
    double h_minus = -0.05;
    double h_plus = 0.05;
    // Log-strike; ignored for NoTouch.
    double a = 0.0;

    static PayoffSpec no_touch(double h_minus, double h_plus);
    static PayoffSpec digital_put(double a, double h_minus, double h_plus);
    static PayoffSpec call(double a, double h_minus, double h_plus);

    void validate() const;
    bool has_strike() const { return kind != PayoffKind::NoTouch; }
};

// Vectors of the alternating crossing series: w_plus lives on the L- grid,
// w_minus on the L+ grid.
struct WhatPair {
    Eigen::VectorXcd w_plus;
    Eigen::VectorXcd w_minus;
    int j = 1;
    bool summed = false;
};

// Cauchy kernels 1/(eta - xi) between the main grids; rows index the target.
struct CauchyMatrices {
    Eigen::MatrixXcd D_pm; // eta on L-, xi on L+
    Eigen::MatrixXcd D_mp; // eta on L+, xi on L-
};

CauchyMatrices build_cauchy_matrices(const ContourSet& grids);

// K_mp maps L+ vectors to L- (rows over L-); K_pm maps L- vectors to L+.
struct TransferMatrices {
    Eigen::MatrixXcd K_mp;
    Eigen::MatrixXcd K_pm;
};

enum class SeriesBlock { Truncated, ResolventInverse, ResolventSolve };

std::string block_name(SeriesBlock block);

struct SeriesDiagnostics {
    int terms = 0;
    double last_increment = 0.0;
};

// W+_{j+1} = i K_mp W-_j, W-_{j+1} = -i K_pm W+_j
WhatPair next_what(const WhatPair& w, const TransferMatrices& K);

// sum_{j=1..M0} (-1)^j W_j
WhatPair sum_series_truncated(const WhatPair& w1, const TransferMatrices& K, int M0,
                              SeriesDiagnostics* diag = nullptr);

// The full alternating sum via (I - K_mp K_pm)^{-1} and (I - K_pm K_mp)^{-1}.
WhatPair sum_series_resolvent(const WhatPair& w1, const WhatPair& w2, const TransferMatrices& K,
                              SeriesBlock mode);

// Power-iteration estimate of the spectral radius of a square matrix.
double spectral_radius_estimate(const Eigen::MatrixXcd& A, int iterations = 40);

struct EngineOptions {
    SeriesBlock block = SeriesBlock::Truncated;
    int M0 = 9;
};

// Per-q dual-space core for one payoff, one grid set, and a fixed set of
// spots strictly inside the corridor.
class BarrierEngine {
public:
    BarrierEngine(const LevyModel& model, const PayoffSpec& payoff, const ContourSet& grids,
                  std::vector<double> xs);

    WhfTables factors(cplx q) const { return whf_.tables(q); }
    WhatPair initial_what(const WhfTables& whf) const;
    TransferMatrices build_transfer_matrices(const WhfTables& whf) const;
    // V~1(q, x) for every spot.
    std::vector<cplx> correction_transform(const WhatPair& summed, const WhfTables& whf) const;
    // Runs the whole per-q pipeline.
    std::vector<cplx> transform(cplx q, const EngineOptions& options) const;

    const CauchyMatrices& cauchy() const { return cauchy_; }
    const ContourSet& grids() const { return grids_; }
    const std::vector<double>& spots() const { return xs_; }

private:
    LevyModel model_;
    PayoffSpec payoff_;
    ContourSet grids_;
    std::vector<double> xs_;
    WienerHopfSolver whf_;
    CauchyMatrices cauchy_;
    // (zeta/2pi) e^{i(h+ - h-) eta} der on L+ and (zeta/2pi) e^{-i(h+ - h-) eta} der on L-
    Eigen::VectorXcd transfer_plus_;
    Eigen::VectorXcd transfer_minus_;
    // Payoff weights of the strike integrals in W_1 on L+ and L-.
    Eigen::VectorXcd strike_plus_;
    Eigen::VectorXcd strike_minus_;
    // rows: spots; (zeta/2pi) e^{i(x - h+) xi} der on L- and e^{i(x - h-) xi} der on L+
    Eigen::MatrixXcd final_plus_;
    Eigen::MatrixXcd final_minus_;
};

} // namespace dbarrier
