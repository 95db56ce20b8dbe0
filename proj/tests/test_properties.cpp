#include "doctest.h"
#include "support/random_poly.hpp"
#include "tophier/delta_bracket.hpp"
#include "tophier/psdo.hpp"

// Randomized law checks; the acceptance suite re-runs these at >= 100
// instances per law.

using namespace tophier;
using tophier::testsupport::PolyGen;

namespace {

JetContextPtr rich_ctx() {
    auto ctx = JetContext::create({"v", "u"});
    ctx->declare_exp_atom("u", DiffPoly::jet(ctx, 1, 0));
    auto vx = DiffPoly::jet(ctx, 0, 1);
    ctx->declare_den_atom("vx", vx);
    ctx->declare_log_atom("vx");
    return ctx;
}

}  // namespace

TEST_CASE("dx is a derivation") {
    auto ctx = rich_ctx();
    PolyGen gen(ctx, 11);
    gen.allow_inv = gen.allow_log = gen.allow_exp = true;
    for (int i = 0; i < 120; ++i) {
        DiffPoly f = gen.poly(), g = gen.poly();
        CHECK((f * g).dx() == f.dx() * g + f * g.dx());
    }
}

TEST_CASE("variational derivative kills total derivatives") {
    auto ctx = rich_ctx();
    PolyGen gen(ctx, 22);
    gen.allow_inv = gen.allow_exp = true;  // log-free densities
    for (int i = 0; i < 120; ++i) {
        DiffPoly f = gen.poly();
        CHECK(f.dx().var_derivative(0).is_zero());
        CHECK(f.dx().var_derivative(1).is_zero());
    }
}

TEST_CASE("substitution commutes with dx") {
    auto ctx = rich_ctx();
    PolyGen gen(ctx, 33);
    gen.allow_inv = gen.allow_log = gen.allow_exp = true;
    PolyGen corr(ctx, 44);
    for (int i = 0; i < 60; ++i) {
        JetMap map = JetMap::identity(ctx, 4);
        map.comp[0] += EpsSeries::monomial(corr.poly(), 2, 4);
        map.comp[1] += EpsSeries::monomial(corr.poly(), 2, 4);
        DiffPoly p = gen.poly();
        EpsSeries a = substitute(p.dx(), map, 4);
        EpsSeries b = substitute(p, map, 4).dx();
        CHECK(EpsSeries::equal_through(a, b, 4));
    }
}

TEST_CASE("pseudodifferential composition is associative") {
    auto ctx = JetContext::create({"u"});
    PolyGen gen(ctx, 55);
    gen.max_terms = 2;
    gen.max_jet_order = 2;
    const int M = 3;
    auto random_op = [&](int maxord) {
        PseudoDiffOp A(ctx, -M);
        for (int k = -M; k <= maxord; ++k) {
            if (gen.uniform(0, 1) == 0) continue;
            EpsPoly c;
            c.add(0, gen.poly());
            A.set_coef(k, c);
        }
        return A;
    };
    for (int i = 0; i < 120; ++i) {
        auto A = random_op(2), B = random_op(1), C = random_op(2);
        auto AB_C = compose(compose(A, B, M), C, M);
        auto A_BC = compose(A, compose(B, C, M), M);
        int lo = std::max(AB_C.trunc(), A_BC.trunc());
        int hi = std::max(AB_C.max_order(), A_BC.max_order());
        for (int k = lo; k <= hi; ++k) CHECK(AB_C.coef(k) == A_BC.coef(k));
    }
}

TEST_CASE("bracket transformation preserves skew-symmetry") {
    auto ctx = JetContext::create({"v"});
    ctx->declare_den_atom("vx", DiffPoly::jet(ctx, 0, 1));
    ctx->declare_log_atom("vx");
    PolyGen gen(ctx, 66);
    gen.max_terms = 2;
    gen.max_jet_order = 1;
    const int E = 2;
    for (int i = 0; i < 40; ++i) {
        // A delta' + (1/2) A' delta is skew for any A
        DiffPoly A = gen.poly();
        LocalPoissonBracket b(ctx, E);
        DeltaTerm t1;
        t1.coef = EpsSeries::lift(A, E);
        t1.order = 1;
        b.add_term(0, 0, t1);
        DeltaTerm t2;
        t2.coef = EpsSeries::lift(A.dx() * Rat(1, 2), E);
        t2.order = 0;
        b.add_term(0, 0, t2);
        REQUIRE(b.is_skew_symmetric());

        JetMap map = JetMap::identity(ctx, E);
        map.comp[0] += EpsSeries::monomial(gen.poly().dx(), 2, E);
        auto out = transform_bracket(b, map, E);
        CHECK(out.is_skew_symmetric());
    }
}
