#pragma once

#include "dbarrier/contours.hpp"
#include "dbarrier/levy.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace dbarrier {

// Wiener-Hopf factors phi+_q, phi-_q on the main grids for one q.
struct WhfTables {
    cplx q;
    std::vector<cplx> phi_plus_on_Lplus;
    std::vector<cplx> phi_minus_on_Lminus;
    std::vector<cplx> phi_plus_on_Lminus;
    std::vector<cplx> phi_minus_on_Lplus;
    std::vector<cplx> ratio_mp_on_Lplus;  // phi- / phi+ on L+
    std::vector<cplx> ratio_pm_on_Lminus; // phi+ / phi- on L-
    std::optional<cplx> phi_minus_at_minus_i;
};

// phi+_q at the targets, integrating over a source grid lying below them:
// phi+_q(xi) = exp[ (1/2 pi i) int_source xi ln(1 + psi(eta)/q) / (eta (xi - eta)) d eta ].
std::vector<cplx> phi_plus_direct(const LevyModel& model, cplx q, const std::vector<cplx>& targets,
                                  const ContourGrid& source);
// phi-_q at the targets, integrating over a source grid lying above them.
std::vector<cplx> phi_minus_direct(const LevyModel& model, cplx q, const std::vector<cplx>& targets,
                                   const ContourGrid& source);
cplx phi_minus_at(const LevyModel& model, cplx q, cplx xi0, const ContourGrid& source);

// Fills phi+ on L-, phi- on L+ and both ratios from the direct tables using
// phi+ phi- (1 + psi/q) = 1.
void phi_cross_via_reciprocal(WhfTables& tables, const std::vector<cplx>& psi_on_Lplus,
                              const std::vector<cplx>& psi_on_Lminus);

// Per-grid-set precomputation shared by all q: psi on every grid and the
// weighted Cauchy matrices from the fine grids to the opposite main grid.
class WienerHopfSolver {
public:
    WienerHopfSolver(const LevyModel& model, const ContourSet& grids, bool need_minus_i);

    WhfTables tables(cplx q) const;

    const std::vector<cplx>& psi_on_Lplus() const { return psi_plus_; }
    const std::vector<cplx>& psi_on_Lminus() const { return psi_minus_; }

private:
    LevyModel model_;
    std::vector<cplx> xi_plus_;
    std::vector<cplx> xi_minus_;
    std::vector<cplx> psi_plus_;
    std::vector<cplx> psi_minus_;
    Eigen::VectorXcd psi_plus_fine_;
    Eigen::VectorXcd psi_minus_fine_;
    // rows: targets on L+, cols: fine L- nodes, entries zeta1 der / (eta (eta - xi))
    Eigen::MatrixXcd kernel_plus_;
    Eigen::MatrixXcd kernel_minus_;
    std::optional<Eigen::RowVectorXcd> kernel_minus_i_;
};

} // namespace dbarrier
