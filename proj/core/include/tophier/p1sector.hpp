#pragma once

#include "tophier/cohomology.hpp"
#include "tophier/quasitriv.hpp"
#include "tophier/tseries.hpp"

namespace tophier {

/// The P^1 Frobenius sector: theta-series, dispersionless flows, genus-one
/// loop-equation solve, genus-two fixtures and the Hodge-integral
/// consistency web. Fields (v, u) with q = e^u and D = v_x^2 - q u_x^2.
class P1Sector {
public:
    P1Sector();

    const JetContextPtr& ctx() const { return ctx_; }
    const CohomologyRing& ring() const { return ring_; }

    /// theta_{alpha,p}(v, u); alpha in {1, 2}.
    DiffPoly theta(int alpha, int p) const;

    /// (dv/dt, du/dt) of the t_k / s_k dispersionless flows.
    std::vector<DiffPoly> flow_t(int k) const;
    std::vector<DiffPoly> flow_s(int k) const;

    /// Gradient (dF1/dv, dF1/du, dF1/dv_x, dF1/du_x) from the lambda-matched
    /// linear system (Cramer over the localized ring).
    std::vector<DiffPoly> genus1_gradient() const;
    /// Integrated: (1/24)[log(v_x^2 - q u_x^2) - u], constant-free.
    DiffPoly genus1_solve() const;

    DiffPoly f2_full() const;     // the displayed genus-2 potential
    DiffPoly f2_degree0() const;  // the displayed degree-zero limit

    struct F2FixtureReport {
        DiffPoly q_to_zero;   // q -> 0 limit of the displayed F_2
        DiffPoly f20;         // the displayed degree-zero expression
        DiffPoly difference;  // q_to_zero - f20 (recorded, not asserted)
        bool equal = false;
    };
    F2FixtureReport f2_fixture() const;

    struct LambdaCheck {
        std::vector<int> spec;
        bool omega_insertion = false;  // lambda_2 route
        Rat got, expected;
        bool ok = false;
    };
    struct LambdaReport {
        bool pass = true;
        std::vector<LambdaCheck> checks;
    };
    /// Expands the degree-zero genus-2 potential along the topological
    /// solution and cross-checks lambda_1 / lambda_2 numbers.
    LambdaReport lambda_consistency(int deg_cap) const;

    struct PolyProbeReport {
        bool pass = false;
        bool intermediate_has_denominators = false;
        std::vector<EpsSeries> transformed;
        std::string offending_term;
    };
    /// Transforms the s_0 flow by the genus-1 quasitriviality substitution
    /// and verifies the eps^2 correction is polynomial in jets and q.
    PolyProbeReport poly_probe_s0(int E = 2) const;

    /// The quasitriviality map u -> u + eps^2 dx^2 F, v -> v + eps^2 dx ds0 F.
    JetMap substitution(const EpsSeries& delta_f, int E) const;

    /// (1/2) tr[1/4 - mu^2] for the P^1 ring (the displayed bracket
    /// coefficient instance at d = 1); also returned via the Biham12 route.
    Rat cmp98_eps2_coefficient() const;
    Rat biham12_eps2_coefficient() const;

private:
    JetContextPtr ctx_;
    CohomologyRing ring_;
    int q_atom_ = -1;
    int d_atom_ = -1;   // D = v_x^2 - q u_x^2
    int vx_atom_ = -1;  // v_x (fixture denominators)
};

}  // namespace tophier
