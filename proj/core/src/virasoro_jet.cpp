#include "tophier/virasoro_jet.hpp"

namespace tophier {

EpsSeries JetVirasoroOp::apply(const DiffPoly& f, int E) const {
    EpsSeries out(ctx, E);
    for (int k = 0; k <= K; ++k) {
        DiffPoly fk = f.partial(0, k);
        if (fk.is_zero()) continue;
        out += EpsSeries::lift(first_eps0[k] * fk, E);
        out += EpsSeries::monomial(first_eps2[k] * fk, 2, E);
        for (int l = 0; l <= K; ++l) {
            if (second_eps2[k][l].is_zero()) continue;
            DiffPoly fkl = fk.partial(0, l);
            if (fkl.is_zero()) continue;
            out += EpsSeries::monomial(second_eps2[k][l] * fkl, 2, E);
        }
    }
    out += EpsSeries::lift(scalar * f, E);
    return out;
}

EpsSeries JetVirasoroOp::apply(const EpsSeries& f, int E) const {
    EpsSeries out(ctx, std::min(E, f.trunc()));
    for (const auto& [k, p] : f.coefficients()) {
        if (k > E) continue;
        out += apply(p, E - k).shifted(k);
    }
    return out;
}

JetVirasoroOp virasoro_jet(JetContextPtr ctx, int m, int K) {
    if (m < -1) raise(ErrorKind::Precondition, "virasoro_jet: m >= -1");
    if (K < 3 * m + 3) raise(ErrorKind::Precondition, "virasoro_jet: K >= 3m+3");
    JetVirasoroOp op;
    op.m = m;
    op.K = K;
    op.ctx = ctx;
    int j = m + 2;  // extract the lambda^{-m-2} coefficient

    op.first_eps0.reserve(K + 1);
    op.first_eps2.reserve(K + 1);
    for (int k = 0; k <= K; ++k) {
        op.first_eps0.push_back(loop_A(ctx, k).lambda_coefficient(j));
        op.first_eps2.push_back(-loop_B(ctx, k).lambda_coefficient(j));
    }
    op.second_eps2.assign(K + 1, std::vector<DiffPoly>(K + 1, DiffPoly::zero(ctx)));
    for (int k = 0; k <= K; ++k)
        for (int l = k; l <= K; ++l) {
            DiffPoly c = Rat(-1, 2) * loop_C(ctx, k, l).lambda_coefficient(j);
            op.second_eps2[k][l] = c;
            op.second_eps2[l][k] = c;
        }
    // scalar term 1/(16 (v - lambda)^2) = w^2/16
    op.scalar = LambdaExtPoly::s_power(ctx, 4, Rat(1, 16)).lambda_coefficient(j);
    return op;
}

EpsSeries virasoro_commutator_defect(const JetContextPtr& ctx, int i, int j, int K,
                                     const DiffPoly& test_fn, int E) {
    auto Li = virasoro_jet(ctx, i, K);
    auto Lj = virasoro_jet(ctx, j, K);
    auto Lij = virasoro_jet(ctx, i + j, K);
    EpsSeries a = Li.apply(Lj.apply(test_fn, E), E);
    EpsSeries b = Lj.apply(Li.apply(test_fn, E), E);
    EpsSeries c = Lij.apply(test_fn, E);
    c *= Rat(i - j);
    a -= b;
    a -= c;
    return a;
}

}  // namespace tophier
