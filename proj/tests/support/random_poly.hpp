#pragma once

#include <random>

#include "tophier/diff_poly.hpp"

namespace tophier::testsupport {

struct PolyGen {
    std::mt19937_64 rng;
    JetContextPtr ctx;
    int max_jet_order = 3;
    int max_terms = 4;
    int max_exponent = 2;
    bool allow_inv = false;
    bool allow_log = false;
    bool allow_exp = false;

    explicit PolyGen(JetContextPtr c, std::uint64_t seed = 20240915) : rng(seed), ctx(std::move(c)) {}

    int uniform(int lo, int hi) {
        std::uniform_int_distribution<int> d(lo, hi);
        return d(rng);
    }

    DiffPoly jet_monomial() {
        DiffPoly p = DiffPoly::constant(ctx, Rat(uniform(-6, 6), uniform(1, 4)));
        int nf = uniform(1, 3);
        for (int i = 0; i < nf; ++i) {
            int comp = uniform(0, ctx->ncomp() - 1);
            int k = uniform(0, max_jet_order);
            p *= DiffPoly::jet(ctx, comp, k).pow(uniform(1, max_exponent));
        }
        return p;
    }

    DiffPoly poly() {
        DiffPoly p = DiffPoly::zero(ctx);
        int nt = uniform(1, max_terms);
        for (int i = 0; i < nt; ++i) {
            DiffPoly t = jet_monomial();
            if (allow_exp && ctx->n_exp_atoms() > 0 && uniform(0, 2) == 0)
                t *= DiffPoly::exp_atom(ctx, uniform(0, ctx->n_exp_atoms() - 1));
            if (allow_inv && ctx->n_den_atoms() > 0 && uniform(0, 2) == 0)
                t *= DiffPoly::inv_atom(ctx, uniform(0, ctx->n_den_atoms() - 1), uniform(1, 2));
            if (allow_log && uniform(0, 3) == 0) {
                for (int a = 0; a < ctx->n_den_atoms(); ++a)
                    if (ctx->den_atom(a).has_log) {
                        t *= DiffPoly::log_atom(ctx, a);
                        break;
                    }
            }
            p += t;
        }
        return p;
    }
};

}  // namespace tophier::testsupport
