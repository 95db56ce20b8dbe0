#include "doctest.h"
#include "support/random_poly.hpp"
#include "tophier/loop_solver.hpp"
#include "tophier/virasoro_jet.hpp"

using namespace tophier;

namespace {

JetContextPtr loop_ctx() {
    auto ctx = JetContext::create({"v"});
    ctx->declare_den_atom("vx", DiffPoly::jet(ctx, 0, 1));
    ctx->declare_log_atom("vx");
    return ctx;
}

}  // namespace

TEST_CASE("loop coefficients A, B, C") {
    auto ctx = loop_ctx();
    auto vx = DiffPoly::jet(ctx, 0, 1);
    auto vxx = DiffPoly::jet(ctx, 0, 2);

    auto A0 = loop_A(ctx, 0);
    CHECK(A0.pure_w());
    CHECK(A0.coeff_w(1) == DiffPoly::constant(ctx, Rat(1)));  // A_0 = w

    auto A1 = loop_A(ctx, 1);
    CHECK(A1.pure_w());
    CHECK(A1.coeff_w(2) == Rat(-3, 2) * vx);  // A_1 = -(3/2) v_x w^2
    CHECK(A1.coeff_w(1).is_zero());

    // B_0 = -(1/16) d_x^2 (w^2) = -(1/16)(6 v_x^2 w^4 - 2 v_xx w^3)
    auto B0 = loop_B(ctx, 0);
    CHECK(B0.pure_w());
    CHECK(B0.coeff_w(4) == Rat(-6, 16) * vx * vx);
    CHECK(B0.coeff_w(3) == Rat(2, 16) * vxx);

    // every displayed family vanishes at lambda = infinity (no w^0 term)
    for (int k = 0; k <= 4; ++k) {
        CHECK(loop_A(ctx, k).vanishes_at_infinity());
        CHECK(loop_A(ctx, k).pure_w());
        CHECK(loop_B(ctx, k).vanishes_at_infinity());
        CHECK(loop_B(ctx, k).pure_w());
        for (int l = 0; l <= 3; ++l) {
            CHECK(loop_C(ctx, k, l).vanishes_at_infinity());
            CHECK(loop_C(ctx, k, l).pure_w());
        }
    }
}

TEST_CASE("jet Virasoro operators from the generating function") {
    auto ctx = loop_ctx();
    auto v = DiffPoly::jet(ctx, 0, 0);

    auto Lm1 = virasoro_jet(ctx, -1, 6);
    CHECK(Lm1.first_eps0[0] == -DiffPoly::constant(ctx, Rat(1)));
    for (int k = 1; k <= 6; ++k) {
        CHECK(Lm1.first_eps0[k].is_zero());
        CHECK(Lm1.first_eps2[k].is_zero());
    }
    CHECK(Lm1.scalar.is_zero());

    auto L0 = virasoro_jet(ctx, 0, 6);
    CHECK(L0.scalar == DiffPoly::constant(ctx, Rat(1, 16)));
    // Fixture: the generating function is normative. Its lambda^{-2}
    // extraction gives first-order coefficients -(k+2)/2 v^(k); the
    // displayed closed form writes -(2k+1)/2 v^(k), and the two agree only
    // at k = 1. (Recorded, not resolved: the recursion below consumes the
    // generating-function family, which reproduces the genus-2 result.)
    CHECK(L0.first_eps0[0] == -v);
    CHECK(L0.first_eps0[0] != Rat(-1, 2) * v);
    for (int k = 1; k <= 6; ++k)
        CHECK(L0.first_eps0[k] == Rat(-(k + 2), 2) * DiffPoly::jet(ctx, 0, k));
    CHECK(L0.first_eps0[1] == Rat(-(2 * 1 + 1), 2) * DiffPoly::jet(ctx, 0, 1));
    // L_0 carries no eps^2 part at all
    for (int k = 0; k <= 6; ++k) CHECK(L0.first_eps2[k].is_zero());
}

TEST_CASE("commutation relations on test functions") {
    auto ctx = loop_ctx();
    const int K = 9;
    testsupport::PolyGen gen(ctx, 777);
    gen.max_jet_order = K - 2;

    std::vector<std::pair<int, int>> pairs{{-1, 0}, {-1, 1}, {0, 1}, {-1, 2}};
    for (auto [i, j] : pairs) {
        for (int trial = 0; trial < 3; ++trial) {
            DiffPoly f = gen.poly();
            EpsSeries defect = virasoro_commutator_defect(ctx, i, j, K, f, 4);
            CHECK(defect.is_zero_through(4));
        }
    }
}

TEST_CASE("solve_genus(1) gives the one-loop free energy") {
    auto ctx = loop_ctx();
    auto grad = solve_genus_gradient(ctx, 1, {});
    CHECK(grad[0].is_zero());
    CHECK(grad[1] == Rat(1, 24) * DiffPoly::inv_atom(ctx, 0));

    auto F1 = solve_genus(ctx, 1, {});
    CHECK(F1 == Rat(1, 24) * DiffPoly::log_atom(ctx, 0));
    CHECK(F1.str() == "1/24*log{vx}");
}

TEST_CASE("solve_genus(2) matches the displayed genus-2 free energy") {
    auto ctx = loop_ctx();
    auto F1 = solve_genus(ctx, 1, {});
    auto F2 = solve_genus(ctx, 2, {F1});

    auto expected = DiffPoly::parse(
        ctx,
        "1/1152*v[v]_4*inv{vx}^2 - 7/1920*v[v]_2*v[v]_3*inv{vx}^3 + "
        "1/360*v[v]_2^3*inv{vx}^4");
    CHECK(F2 == expected);

    // depends on jets of order at most 3g-2 = 4, with no explicit v
    CHECK(F2.max_jet_order() == 4);
    CHECK(F2.partial(0, 0).is_zero());

    auto rep = F2.grade();
    CHECK(rep.homogeneous);
    CHECK(rep.grade == 2);
}
