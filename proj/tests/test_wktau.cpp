#include "doctest.h"
#include "tophier/loop_solver.hpp"
#include "tophier/wktau.hpp"

using namespace tophier;

namespace {

DiffPoly f2_jets() {
    auto ctx = JetContext::create({"v"});
    ctx->declare_den_atom("vx", DiffPoly::jet(ctx, 0, 1));
    ctx->declare_log_atom("vx");
    auto F1 = solve_genus(ctx, 1, {});
    return solve_genus(ctx, 2, {F1});
}

}  // namespace

TEST_CASE("topological solution of the dispersionless hierarchy") {
    const int D = 5, P = 6;
    TSeries v = wk_vtop(D, P);

    CHECK(v.coefficient_of({0}) == Rat(1));      // t_0
    CHECK(v.coefficient_of({0, 1}) == Rat(1));   // t_0 t_1

    // defining implicit equation holds identically through truncation
    TSeries rhs(P + 1, D);
    TSeries vpow = TSeries::constant(P + 1, D, Rat(1));
    for (int p = 0; p <= P; ++p) {
        if (p > 0) vpow = vpow * v;
        rhs += TSeries::variable(P + 1, D, p) * vpow * rat_factorial_inv(p);
    }
    CHECK(rhs == v);

    // degree-3 slice coefficients
    CHECK(v.coefficient_of({0, 0, 2}) == Rat(1, 2));
    CHECK(v.coefficient_of({0, 1, 1}) == Rat(1));
}

TEST_CASE("genus-0 intersection numbers") {
    CHECK(wk_intersect_genus0({0, 0, 0}) == Rat(1));
    CHECK(wk_intersect_genus0({0, 0, 0, 1}) == Rat(1));
    CHECK(wk_intersect_genus0({0, 0, 0, 1, 1}) == Rat(2));
    CHECK(wk_intersect_genus0({0, 0, 0, 0, 2}) == Rat(1));

    std::string note;
    CHECK(wk_intersect_genus0({1, 1, 1}, &note) == Rat(0));
    CHECK(note.find("dimension") != std::string::npos);
}

TEST_CASE("theta-type densities from the genus-0 potential") {
    // d^2 F0 / dx dt_p at v_top equals v^{p+1}/(p+1)!
    const int D = 5, P = 6;
    TSeries f0 = wk_f0(D, P);
    TSeries v = wk_vtop(D, P);
    for (int p = 0; p <= 2; ++p) {
        TSeries lhs = f0.derivative(0).derivative(p).truncated(D - 2);
        TSeries rhs = v.pow(p + 1) * rat_factorial_inv(p + 1);
        CHECK(lhs == rhs.truncated(D - 2));
    }
}

TEST_CASE("genus-1 potential") {
    TSeries f1 = wk_f1(4, 5);
    CHECK(f1.constant_term() == Rat(0));
    CHECK(wk_intersect_genus1({1}) == Rat(1, 24));
    // low-degree values tied to the string relation
    CHECK(wk_intersect_genus1({0, 2}) == Rat(1, 24));
    CHECK(wk_intersect_genus1({0, 0, 3}) == Rat(1, 24));
    CHECK(wk_intersect_genus1({1, 1, 1}) == Rat(1, 12));
}

TEST_CASE("genus-2 Hodge integrals") {
    CHECK(wk_genus2_lambda({3}, HodgeClass::Lambda1) == Rat(1, 480));
    CHECK(wk_genus2_lambda({2}, HodgeClass::Lambda2) == Rat(7, 5760));
    CHECK(wk_genus2_lambda({1, 2}, HodgeClass::Lambda2) == Rat(7, 1920));
    CHECK(wk_genus2_lambda({1, 1}, HodgeClass::Lambda2) == Rat(0));
    CHECK(wk_genus2_lambda({4}, HodgeClass::Lambda1) == Rat(0));
}

TEST_CASE("Virasoro constraints on the truncated tau expansion") {
    auto F2 = f2_jets();
    VirasoroReport rep = wk_virasoro_check(2, 5, 2, F2);
    for (const auto& viol : rep.violations) {
        CAPTURE(viol);
        CHECK(false);
    }
    CHECK(rep.pass);
    CHECK(rep.checked_coefficients > 30);
}
