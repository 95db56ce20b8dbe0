#include "doctest.h"
#include "tophier/delta_bracket.hpp"
#include "tophier/loop_solver.hpp"
#include "tophier/psdo.hpp"
#include "tophier/quasitriv.hpp"

using namespace tophier;

namespace {

JetContextPtr kdv_ctx() {
    auto ctx = JetContext::create({"v"});
    ctx->declare_den_atom("vx", DiffPoly::jet(ctx, 0, 1));
    ctx->declare_log_atom("vx");
    return ctx;
}

EpsSeries delta_f(const JetContextPtr& ctx, int E) {
    auto F1 = solve_genus(ctx, 1, {});
    EpsSeries df = EpsSeries::lift(F1, E);
    if (E >= 2) {
        auto F2 = solve_genus(ctx, 2, {F1});
        df += EpsSeries::monomial(F2, 2, E);
    }
    return df;
}

DiffPoly disp_flow(const JetContextPtr& ctx, int i) {
    // v_{t_i} = v^i v_x / i!
    return DiffPoly::jet(ctx, 0, 0).pow(i) * rat_factorial_inv(i) * DiffPoly::jet(ctx, 0, 1);
}

}  // namespace

TEST_CASE("delta-function normalization") {
    auto ctx = kdv_ctx();
    auto f = DiffPoly::jet(ctx, 0, 0).pow(2);  // any smooth coefficient

    DeltaTerm t;
    t.coef = EpsSeries::lift(f, 4);
    t.order = 1;
    t.at_y = true;
    auto norm = normalize_delta(ctx, 4, {t});
    CHECK(norm.at(1).at(0) == f);
    CHECK(norm.at(0).at(0) == f.dx());

    t.order = 0;
    norm = normalize_delta(ctx, 4, {t});
    CHECK(norm.size() == 1);
    CHECK(norm.at(0).at(0) == f);

    t.order = 3;
    norm = normalize_delta(ctx, 4, {t});
    CHECK(norm.at(3).at(0) == f);
    CHECK(norm.at(2).at(0) == Rat(3) * f.dx());
    CHECK(norm.at(1).at(0) == Rat(3) * f.dx(2));
    CHECK(norm.at(0).at(0) == f.dx(3));
}

TEST_CASE("quasitriviality reproduces the Lax flows (cross-oracle)") {
    auto vctx = kdv_ctx();
    auto uctx = kdv_ctx();
    const int E = 4;
    EpsSeries df = delta_f(vctx, E);

    for (int i = 0; i <= 2; ++i) {
        EpsSeries transformed = transform_flow_kdv(disp_flow(vctx, i), df, E);
        EpsSeries lax = kdv_rhs(uctx, i, E);
        for (int k = 0; k <= E; k += 2)
            CHECK(transformed.at(k) == lax.at(k).rebased(vctx));
    }
}

TEST_CASE("x-translation flow is untouched at all orders") {
    auto ctx = kdv_ctx();
    const int E = 4;
    EpsSeries t0 = transform_flow_kdv(disp_flow(ctx, 0), delta_f(ctx, E), E);
    CHECK(t0.at(0) == DiffPoly::jet(ctx, 0, 1));
    CHECK(t0.at(2).is_zero());
    CHECK(t0.at(4).is_zero());
}

TEST_CASE("the eps^2 correction takes the displayed closed form") {
    auto ctx = kdv_ctx();
    auto u = DiffPoly::jet(ctx, 0, 0);
    auto ux = DiffPoly::jet(ctx, 0, 1);
    auto uxx = DiffPoly::jet(ctx, 0, 2);
    EpsSeries df = EpsSeries::lift(solve_genus(ctx, 1, {}), 2);

    for (int i = 1; i <= 4; ++i) {
        EpsSeries flow = transform_flow_kdv(disp_flow(ctx, i), df, 2);
        DiffPoly inner = Rat(2) * u.pow(i - 1) * rat_factorial_inv(i - 1) * uxx;
        if (i >= 2) inner += u.pow(i - 2) * rat_factorial_inv(i - 2) * ux * ux;
        CHECK(flow.at(0) == disp_flow(ctx, i));
        CHECK(flow.at(2) == (inner * Rat(1, 24)).dx());
    }
}

TEST_CASE("transformed Poisson pencil") {
    auto ctx = kdv_ctx();
    auto v = DiffPoly::jet(ctx, 0, 0);
    auto vx = DiffPoly::jet(ctx, 0, 1);
    const int E = 4;

    // { , }_lambda = (v - lambda) delta' + (1/2) v_x delta
    LocalPoissonBracket pencil(ctx, E);
    {
        DeltaTerm a;
        a.coef = EpsSeries::lift(v, E);
        a.order = 1;
        pencil.add_term(0, 0, a);
        DeltaTerm b;
        b.coef = EpsSeries::lift(DiffPoly::constant(ctx, Rat(-1)), E);
        b.order = 1;
        b.lambda_pow = 1;
        pencil.add_term(0, 0, b);
        DeltaTerm c;
        c.coef = EpsSeries::lift(Rat(1, 2) * vx, E);
        c.order = 0;
        pencil.add_term(0, 0, c);
    }
    CHECK(pencil.is_skew_symmetric());

    EpsSeries df = delta_f(ctx, E);
    JetMap map = kdv_substitution(df, E);
    LocalPoissonBracket out = transform_bracket(pencil, map, E);

    // (u - lambda) delta' + (1/2) u_x delta + (eps^2/8) delta'''
    LocalPoissonBracket expected(ctx, E);
    {
        DeltaTerm a;
        a.coef = EpsSeries::lift(v, E);
        a.order = 1;
        expected.add_term(0, 0, a);
        DeltaTerm b;
        b.coef = EpsSeries::lift(DiffPoly::constant(ctx, Rat(-1)), E);
        b.order = 1;
        b.lambda_pow = 1;
        expected.add_term(0, 0, b);
        DeltaTerm c;
        c.coef = EpsSeries::lift(Rat(1, 2) * vx, E);
        c.order = 0;
        expected.add_term(0, 0, c);
        DeltaTerm d;
        d.coef = EpsSeries::monomial(DiffPoly::constant(ctx, Rat(1, 8)), 2, E);
        d.order = 3;
        expected.add_term(0, 0, d);
    }

    SUBCASE("matches the displayed bracket at eps^2") {
        CHECK(LocalPoissonBracket::equal_through(out, expected, 2));
    }
    SUBCASE("every eps^4 coefficient vanishes (pencil truncates)") {
        CHECK(LocalPoissonBracket::equal_through(out, expected, 4));
    }
    SUBCASE("the lambda-linear part stays -delta'") {
        for (int order = 0; order <= 4; ++order) {
            LamPoly c = out.coefficient(0, 0, order);
            if (c.size() < 2) continue;
            if (order == 1) {
                CHECK(c[1].at(0) == DiffPoly::constant(ctx, Rat(-1)));
                CHECK(c[1].at(2).is_zero());
                CHECK(c[1].at(4).is_zero());
            } else {
                CHECK(c[1].is_zero_through(4));
            }
        }
    }
    SUBCASE("skew-symmetry survives the transformation") {
        CHECK(out.is_skew_symmetric());
    }
}

TEST_CASE("tau-symmetric densities") {
    auto ctx = kdv_ctx();
    auto u = DiffPoly::jet(ctx, 0, 0);
    auto ux = DiffPoly::jet(ctx, 0, 1);
    auto uxx = DiffPoly::jet(ctx, 0, 2);
    const int E = 2;
    EpsSeries df = delta_f(ctx, 4);

    SUBCASE("h_{-1} is the field itself at every computed order") {
        EpsSeries h = tau_density(-1, 4, df);
        CHECK(h.at(0) == u);
        CHECK(h.at(2).is_zero());
        CHECK(h.at(4).is_zero());
    }

    SUBCASE("the displayed polynomial form at eps^2") {
        for (int i = 0; i <= 3; ++i) {
            EpsSeries h = tau_density(i, E, df);
            CHECK(h.at(0) == u.pow(i + 2) * rat_factorial_inv(i + 2));
            DiffPoly disp = Rat(2) * u.pow(i) * rat_factorial_inv(i) * uxx;
            if (i >= 1) disp += u.pow(i - 1) * rat_factorial_inv(i - 1) * ux * ux;
            CHECK(h.at(2) == disp * Rat(1, 24));
        }
    }

    SUBCASE("integral class matches the transformed Hamiltonian density") {
        for (int i = 0; i <= 3; ++i) {
            EpsSeries h = tau_density(i, E, df);
            // u^{i+2}/(i+2)! - (eps^2/24) u^{i-1} u_x^2 / (i-1)!
            EpsSeries ham(ctx, E);
            ham.set(0, u.pow(i + 2) * rat_factorial_inv(i + 2));
            if (i >= 1)
                ham.set(2, -Rat(1, 24) * u.pow(i - 1) * rat_factorial_inv(i - 1) * ux * ux);
            CHECK(equal_mod_dx(h, ham, E));
            CHECK_FALSE(equal_mod_dx(h, ham + EpsSeries::lift(u, E), E));
        }
    }

    SUBCASE("tau-symmetry d_{t_j} h_{i-1} = d_{t_i} h_{j-1}") {
        std::vector<EpsSeries> flows;
        for (int i = 0; i <= 3; ++i) flows.push_back(transform_flow_kdv(disp_flow(ctx, i), df, E));
        for (int i = 0; i <= 3; ++i)
            for (int j = i + 1; j <= 3; ++j) {
                EpsSeries hi = tau_density(i - 1, E, df);
                EpsSeries hj = tau_density(j - 1, E, df);
                EpsSeries a = flow_derivative({flows[j]}, hi, E);
                EpsSeries b = flow_derivative({flows[i]}, hj, E);
                CHECK(EpsSeries::equal_through(a, b, E));
            }
    }
}

TEST_CASE("change of variables preserves commutativity through eps^2") {
    auto ctx = kdv_ctx();
    const int E = 2;
    EpsSeries df = delta_f(ctx, E);
    std::vector<EpsSeries> flows;
    for (int i = 0; i <= 3; ++i) flows.push_back(transform_flow_kdv(disp_flow(ctx, i), df, E));
    for (auto [i, j] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {1, 3}}) {
        EpsSeries a = flow_derivative({flows[j]}, flows[i], E);
        EpsSeries b = flow_derivative({flows[i]}, flows[j], E);
        CHECK(EpsSeries::equal_through(a, b, E));
    }
}
