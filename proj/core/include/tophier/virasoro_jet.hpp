#pragma once

#include "tophier/eps_series.hpp"
#include "tophier/lambda_ext.hpp"

namespace tophier {

/// Second-order operator on functions of jets, extracted from the
/// lambda^{-m-2} coefficient of the loop-equation generating series:
/// L_m = sum_k (a_k - eps^2 b_k) d/dv^(k)
///       - eps^2/2 sum_{k,l} c_kl d^2/dv^(k) dv^(l) + scalar.
struct JetVirasoroOp {
    int m = 0;
    int K = 0;  // jet cutoff
    JetContextPtr ctx;
    std::vector<DiffPoly> first_eps0;                 // a_k, k = 0..K
    std::vector<DiffPoly> first_eps2;                 // -b_k
    std::vector<std::vector<DiffPoly>> second_eps2;   // -(1/2) c_kl, symmetric
    DiffPoly scalar;

    EpsSeries apply(const DiffPoly& f, int E) const;
    EpsSeries apply(const EpsSeries& f, int E) const;
};

/// pre: m >= -1, K >= 3m+3 (enough jets for the downstream recursion).
JetVirasoroOp virasoro_jet(JetContextPtr ctx, int m, int K);

/// [L_i, L_j] f - (i-j) L_{i+j} f for a test function of jets of order
/// <= K-2; identically zero when the commutation relations hold.
EpsSeries virasoro_commutator_defect(const JetContextPtr& ctx, int i, int j, int K,
                                     const DiffPoly& test_fn, int E);

}  // namespace tophier
