#include "doctest.h"
#include "tophier/psdo.hpp"
#include "tophier/quasitriv.hpp"

using namespace tophier;

namespace {

JetContextPtr u_ctx() { return JetContext::create({"u"}); }

}  // namespace

TEST_CASE("composition: first-order Leibniz") {
    auto ctx = u_ctx();
    auto u = DiffPoly::jet(ctx, 0, 0);
    auto ux = DiffPoly::jet(ctx, 0, 1);

    PseudoDiffOp D(ctx);
    EpsPoly one;
    one.add(0, DiffPoly::constant(ctx, Rat(1)));
    D.set_coef(1, one);

    PseudoDiffOp U(ctx);
    EpsPoly uc;
    uc.add(0, u);
    U.set_coef(0, uc);

    auto C = compose(D, U, 2);
    CHECK(C.coef(1).c.at(0) == u);        // u * (eps d)
    CHECK(C.coef(0).c.at(1) == ux);       // eps u_x
    CHECK(C.coef(0).c.size() == 1);
}

TEST_CASE("L o L has order 4 with leading coefficient 1/4") {
    auto ctx = u_ctx();
    auto L = PseudoDiffOp::lax_kdv(ctx);
    auto LL = compose(L, L, 4);
    CHECK(LL.max_order() == 4);
    CHECK(LL.coef(4).c.at(0) == DiffPoly::constant(ctx, Rat(1, 4)));
}

TEST_CASE("sqrt of 2L") {
    auto ctx = u_ctx();
    int M = 4;
    auto R = sqrt2L(ctx, M);
    CHECK(R.max_order() == 1);
    CHECK(R.coef(1).c.at(0) == DiffPoly::constant(ctx, Rat(1)));
    CHECK(R.coef(0).zero());
    CHECK(R.coef(-1).c.at(0) == DiffPoly::jet(ctx, 0, 0));  // u at (eps d)^-1

    // defining postcondition: R o R - 2L vanishes through retained orders
    auto R2 = compose(R, R, M);
    PseudoDiffOp twoL = PseudoDiffOp::lax_kdv(ctx);
    twoL *= Rat(2);
    R2 -= twoL;
    for (int k = R2.trunc() >= -M ? R2.trunc() : -M + 2; k <= R2.max_order(); ++k)
        CHECK(R2.coef(k).zero());
}

TEST_CASE("A_i leading and sub-leading coefficients") {
    auto ctx = u_ctx();
    auto u = DiffPoly::jet(ctx, 0, 0);
    for (int i = 1; i <= 2; ++i) {
        auto A = kdv_a_operator(ctx, i, 2 * i + 2);
        Rat fct(mpz_class(1), double_factorial(2 * i + 1));
        CHECK(A.max_order() == 2 * i + 1);
        CHECK(A.coef(2 * i + 1).c.at(0) == DiffPoly::constant(ctx, fct));
        CHECK(A.coef(2 * i - 1).c.at(0) == Rat(2 * i + 1) * fct * u);
    }
}

TEST_CASE("KdV flows match the displayed hierarchy") {
    auto ctx = u_ctx();
    auto u = DiffPoly::jet(ctx, 0, 0);
    auto ux = DiffPoly::jet(ctx, 0, 1);

    auto f0 = kdv_rhs(ctx, 0, 4);
    CHECK(f0.at(0) == ux);
    CHECK(f0.at(2).is_zero());

    auto f1 = kdv_rhs(ctx, 1, 4);
    CHECK(f1.at(0) == u * ux);
    CHECK(f1.at(2) == Rat(1, 12) * DiffPoly::jet(ctx, 0, 3));
    CHECK(f1.at(4).is_zero());

    auto f2 = kdv_rhs(ctx, 2, 4);
    CHECK(f2.at(0) == Rat(1, 2) * u.pow(2) * ux);
    CHECK(f2.at(2) == Rat(1, 12) * (Rat(2) * ux * DiffPoly::jet(ctx, 0, 2) +
                                    u * DiffPoly::jet(ctx, 0, 3)));
    CHECK(f2.at(4) == Rat(1, 240) * DiffPoly::jet(ctx, 0, 5));
}

TEST_CASE("Lax property: commutator is a pure multiplication operator") {
    auto ctx = u_ctx();
    for (int i = 0; i <= 3; ++i) {
        auto C = kdv_commutator(ctx, i, std::max(6 / 2 + 2, 2 * i));
        for (const auto& [k, p] : C.coefficients()) {
            (void)p;
            CHECK(k == 0);
        }
    }
}

TEST_CASE("flow compatibility through eps^4") {
    auto ctx = u_ctx();
    const int E = 4;
    std::vector<EpsSeries> flows;
    for (int i = 0; i <= 3; ++i) flows.push_back(kdv_rhs(ctx, i, E));

    auto check_pair = [&](int i, int j) {
        std::vector<EpsSeries> fi{flows[i]}, fj{flows[j]};
        auto dji = flow_derivative(fj, flows[i], E);
        auto dij = flow_derivative(fi, flows[j], E);
        CHECK(EpsSeries::equal_through(dji, dij, E));
    };
    check_pair(1, 2);
    check_pair(1, 3);
    check_pair(2, 3);
}
