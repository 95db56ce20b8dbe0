#pragma once

#include "tophier/cohomology.hpp"
#include "tophier/delta_bracket.hpp"
#include "tophier/tseries.hpp"

namespace tophier {

/// H*-valued differential polynomial: one coordinate DiffPoly per basis
/// element, cup product lifted coefficient-wise.
using CohPoly = std::vector<DiffPoly>;

/// Degree-zero Gromov-Witten sector over a validated cohomology ring:
/// hierarchy construction, brackets, genus-one potential, Chern constraint.
class DegreeZeroSector {
public:
    explicit DegreeZeroSector(CohomologyRing ring);

    const CohomologyRing& ring() const { return ring_; }
    const JetContextPtr& vctx() const { return vctx_; }
    const JetContextPtr& uctx() const { return uctx_; }

    CohPoly jet_vector(int order) const;  // (v^{1,k} .. v^{n,k})
    CohPoly cup(const CohPoly& a, const CohPoly& b) const;
    CohPoly cup_const(const CohVec& a, const CohPoly& b) const;
    DiffPoly pairing(const CohVec& a, const CohPoly& b) const;
    CohPoly cup_power(const CohPoly& a, int e) const;

    /// Nilpotent logarithm of the jet vector v_x (H^0 part the declared
    /// invertible atom).
    CohPoly log_vx() const;

    /// Contravariant components of d(v)/dt^alpha_p = d_x(gamma_alpha v^{p+1}/(p+1)!).
    std::vector<DiffPoly> phb0_flow(int alpha, int p) const;

    /// F_1 = (1/24)<c_d, log v_x> - (1/24)<c_{d-1}, v>.
    DiffPoly genus1() const;

    /// u = v + eps^2 d_x d_{t^alpha_0} F_1 in contravariant components;
    /// certified equal to the closed vector form
    /// v + (eps^2/24) c_d (log v_x)_xx - (eps^2/24) c_{d-1} v_xx.
    JetMap substitution(int E) const;

    struct FlowResult {
        std::vector<EpsSeries> transformed;  // transform_flow output (u-jets)
        std::vector<EpsSeries> direct;       // the displayed hierarchy rhs
        bool certificate = false;
    };
    /// pre: d >= 4 unless override_dim_gate.
    FlowResult htt0_flow(int alpha, int p, int E = 2, bool override_dim_gate = false) const;

    /// Untransformed brackets in contravariant coordinates.
    LocalPoissonBracket bracket1(int E) const;
    LocalPoissonBracket bracket2(int E) const;
    /// The displayed transformed brackets (expected values), covariant.
    LocalPoissonBracket expected_bracket1_cov(int E) const;
    LocalPoissonBracket expected_bracket2_cov(int E) const;
    /// Lower both indices with eta.
    LocalPoissonBracket lower_indices(const LocalPoissonBracket& b) const;

    struct BracketReport {
        bool first_matches = false;
        bool second_matches = false;
        bool skew_ok = false;
        bool scalar_matches = false;   // the (1,1) covariant reduction
        Rat scalar_eps2_coefficient;   // (1/12)[(3-d)n/2 - <c1, c_{d-1}>]
        std::string detail;
    };
    BracketReport deg0_brackets(int E = 2, bool override_dim_gate = false) const;

    CohomologyRing::ChernReport chern_check() const { return ring_.chern_check(); }

    /// Cohomology-valued topological solution (vars t^alpha_p, index p*n+alpha).
    std::vector<TSeries> vtop_vector(int D, int P) const;
    /// eps^2 log tau_0 of that solution.
    TSeries tau0_log(int D, int P) const;
    /// Genus-1 degree-zero potential evaluated along the topological solution.
    TSeries genus1_at_vtop(int D, int P) const;

    int tvar_index(int alpha, int p) const { return p * ring_.n() + alpha; }

private:
    CohomologyRing ring_;
    JetContextPtr vctx_;
    JetContextPtr uctx_;
};

}  // namespace tophier
