#include "doctest.h"
#include "support/random_poly.hpp"
#include "tophier/diff_poly.hpp"
#include "tophier/eps_series.hpp"
#include "tophier/substitute.hpp"

using namespace tophier;

namespace {

// one field v, localized at v_x, with log v_x
JetContextPtr kdv_ctx() {
    auto ctx = JetContext::create({"v"});
    ctx->declare_den_atom("vx", DiffPoly::jet(ctx, 0, 1));
    ctx->declare_log_atom("vx");
    return ctx;
}

// two fields (v, u) with q = e^u
JetContextPtr vu_ctx() {
    auto ctx = JetContext::create({"v", "u"});
    ctx->declare_exp_atom("u", DiffPoly::jet(ctx, 1, 0));
    return ctx;
}

}  // namespace

TEST_CASE("rational basics") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-2, -4) == Rat(1, 2));
    CHECK(Rat(2, -4).str() == "-1/2");
    CHECK(Rat::parse("7/5760").str() == "7/5760");
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(3).pow(-2) == Rat(1, 9));
    CHECK(double_factorial(5) == 15);
    CHECK(double_factorial(-1) == 1);
    CHECK(binomial(-1, 3) == -1);
    CHECK(binomial(-2, 2) == 3);
}

TEST_CASE("dx on powers, logs and exp atoms") {
    auto ctx = kdv_ctx();
    auto v = DiffPoly::jet(ctx, 0, 0);
    auto vx = DiffPoly::jet(ctx, 0, 1);

    CHECK(v.pow(3).dx() == Rat(3) * v.pow(2) * vx);
    CHECK(v.pow(3).dx().str() == "3*v[v]_0^2*v[v]_1");

    auto logvx = DiffPoly::log_atom(ctx, 0);
    CHECK(logvx.dx() == DiffPoly::jet(ctx, 0, 2) * DiffPoly::inv_atom(ctx, 0));
    CHECK(logvx.dx().str() == "v[v]_2*inv{vx}");

    auto uctx = vu_ctx();
    auto q = DiffPoly::exp_atom(uctx, 0);
    auto ux = DiffPoly::jet(uctx, 1, 1);
    CHECK(q.dx() == q * ux);
}

TEST_CASE("localized arithmetic cancels") {
    auto ctx = kdv_ctx();
    auto vx = DiffPoly::jet(ctx, 0, 1);
    auto inv = DiffPoly::inv_atom(ctx, 0);
    CHECK(vx * inv == DiffPoly::constant(ctx, Rat(1)));
    CHECK((vx.pow(3) * inv) == vx.pow(2));
    auto vxx = DiffPoly::jet(ctx, 0, 2);
    auto p = (vxx + vx * vx) * inv;  // stays a genuine fraction
    CHECK(p.has_denominators());
    CHECK(p * vx == vxx + vx * vx);
}

TEST_CASE("variational derivative") {
    auto ctx = kdv_ctx();
    auto v = DiffPoly::jet(ctx, 0, 0);
    auto vx = DiffPoly::jet(ctx, 0, 1);
    auto vxx = DiffPoly::jet(ctx, 0, 2);

    // h = v^3/3!  ->  v^2/2, and the induced flow d_x(v^2/2) = v v_x
    auto h = v.pow(3) * Rat(1, 6);
    auto d = h.var_derivative(0);
    CHECK(d == v.pow(2) * Rat(1, 2));
    CHECK(d.dx() == v * vx);

    CHECK((vx * vx * Rat(1, 2)).var_derivative(0) == -vxx);

    // kills total derivatives
    auto any = v.pow(2) * vxx + vx.pow(3);
    CHECK(any.dx().var_derivative(0).is_zero());

    auto withlog = DiffPoly::log_atom(ctx, 0);
    CHECK_THROWS_AS(withlog.var_derivative(0), Error);
}

TEST_CASE("grade") {
    auto ctx = kdv_ctx();
    auto vx = DiffPoly::jet(ctx, 0, 1);
    auto vxx = DiffPoly::jet(ctx, 0, 2);
    auto vxxx = DiffPoly::jet(ctx, 0, 3);
    auto v4 = DiffPoly::jet(ctx, 0, 4);
    auto inv = [&](int m) { return DiffPoly::inv_atom(ctx, 0, m); };

    CHECK(vxx.grade().grade == 2);
    CHECK((vx * vx).grade().grade == 2);
    // the three terms of the genus-2 free energy all have degree 2
    CHECK((v4 * inv(2)).grade().grade == 2);
    CHECK((vxx * vxxx * inv(3)).grade().grade == 2);
    CHECK((vxx.pow(3) * inv(4)).grade().grade == 2);

    auto mixed = vxx + vx;
    auto rep = mixed.grade();
    CHECK_FALSE(rep.homogeneous);
    CHECK(rep.grades_seen == std::set<long long>{1, 2});
}

TEST_CASE("serialize / parse round trip") {
    auto ctx = kdv_ctx();
    auto vx = DiffPoly::jet(ctx, 0, 1);
    auto vxx = DiffPoly::jet(ctx, 0, 2);
    auto p = Rat(7, 3) * vxx.pow(2) * DiffPoly::inv_atom(ctx, 0, 3) -
             DiffPoly::log_atom(ctx, 0) * vx + DiffPoly::constant(ctx, Rat(-2));
    auto text = p.str();
    auto q = DiffPoly::parse(ctx, text);
    CHECK(q == p);
    CHECK(q.str() == text);

    CHECK(DiffPoly::parse(ctx, "1/24*log{vx}").str() == "1/24*log{vx}");
    CHECK(DiffPoly::parse(ctx, "v[v]_4*inv{vx}^2/1152 - 7/1920*v[v]_2*v[v]_3*inv{vx}^3").has_denominators());
    CHECK_THROWS_AS(DiffPoly::parse(ctx, "v[w]_0"), Error);
    CHECK_THROWS_AS(DiffPoly::parse(ctx, "1 +"), Error);
}

TEST_CASE("exact division") {
    auto ctx = vu_ctx();
    auto v = DiffPoly::jet(ctx, 0, 0);
    auto u = DiffPoly::jet(ctx, 1, 0);
    auto q = DiffPoly::exp_atom(ctx, 0);

    auto a = (v + u) * (v * v + q * u);
    auto quot = DiffPoly::try_divide_exact(a, v + u);
    REQUIRE(quot.has_value());
    CHECK(*quot == v * v + q * u);
    CHECK_FALSE(DiffPoly::try_divide_exact(a + DiffPoly::constant(ctx, Rat(1)), v + u).has_value());

    // Laurent content in exp atoms
    auto b = (v * q.pow(-1) + u) * (v + q);
    auto quot2 = DiffPoly::try_divide_exact(b, v + q);
    REQUIRE(quot2.has_value());
    CHECK(*quot2 == v * q.pow(-1) + u);
}

TEST_CASE("substitute: quasitriviality at eps^2") {
    auto ctx = kdv_ctx();
    auto v = DiffPoly::jet(ctx, 0, 0);
    auto F1 = DiffPoly::log_atom(ctx, 0) * Rat(1, 24);

    JetMap map = JetMap::identity(ctx, 2);
    map.comp[0] += EpsSeries::monomial(F1.dx(2), 2, 2);

    auto img = substitute(v, map, 2);
    CHECK(img.at(0) == v);
    CHECK(img.at(2) == F1.dx(2));

    auto imgx = substitute(DiffPoly::jet(ctx, 0, 1), map, 2);
    CHECK(imgx.at(0) == DiffPoly::jet(ctx, 0, 1));
    CHECK(imgx.at(2) == F1.dx(3));

    // identity map leaves everything unchanged at every order
    JetMap id = JetMap::identity(ctx, 6);
    auto p = DiffPoly::parse(ctx, "v[v]_2^3*inv{vx}^4 + 1/24*log{vx}");
    auto pe = substitute(p, id, 6);
    CHECK(pe.at(0) == p);
    CHECK(pe.at(2).is_zero());
    CHECK(pe.at(4).is_zero());
    CHECK(pe.at(6).is_zero());
}

TEST_CASE("substitute inverse round trip") {
    auto ctx = kdv_ctx();
    auto F1 = DiffPoly::log_atom(ctx, 0) * Rat(1, 24);
    JetMap map = JetMap::identity(ctx, 4);
    map.comp[0] += EpsSeries::monomial(F1.dx(2), 2, 4);

    JetMap inv = invert_near_identity(map, 4);
    // U(V(u)) = u through eps^4
    auto round = substitute(map.comp[0], inv, 4);
    CHECK(round.at(0) == DiffPoly::jet(ctx, 0, 0));
    CHECK(round.at(2).is_zero());
    CHECK(round.at(4).is_zero());
}

TEST_CASE("rebase between compatible contexts") {
    auto a = kdv_ctx();
    auto b = JetContext::create({"u"});
    b->declare_den_atom("ux", DiffPoly::jet(b, 0, 1));
    b->declare_log_atom("ux");
    auto p = DiffPoly::parse(a, "3*v[v]_2^2*inv{vx}");
    auto q = p.rebased(b);
    CHECK(q.str() == "3*v[u]_2^2*inv{ux}");
}
