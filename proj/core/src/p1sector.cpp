#include "tophier/p1sector.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include "tophier/wktau.hpp"

namespace tophier {

P1Sector::P1Sector() : ring_(CohomologyRing::projective(1)) {
    auto ctx = JetContext::create({"v", "u"});
    q_atom_ = ctx->declare_exp_atom("u", DiffPoly::jet(ctx, 1, 0));
    DiffPoly vx = DiffPoly::jet(ctx, 0, 1);
    DiffPoly ux = DiffPoly::jet(ctx, 1, 1);
    DiffPoly q = DiffPoly::exp_atom(ctx, q_atom_);
    d_atom_ = ctx->declare_den_atom("D", vx * vx - q * ux * ux);
    ctx->declare_log_atom("D");
    vx_atom_ = ctx->declare_den_atom("vx", vx);
    ctx->declare_log_atom("vx");
    ctx_ = ctx;
}

DiffPoly P1Sector::theta(int alpha, int p) const {
    if ((alpha != 1 && alpha != 2) || p < 0)
        raise(ErrorKind::Precondition, "theta: alpha in {1,2}, p >= 0");
    DiffPoly v = DiffPoly::jet(ctx_, 0, 0);
    DiffPoly u = DiffPoly::jet(ctx_, 1, 0);
    DiffPoly q = DiffPoly::exp_atom(ctx_, q_atom_);
    DiffPoly out = DiffPoly::zero(ctx_);
    // theta_{2,p} = sum_{j+2m=p+1} v^j q^m / (j! (m!)^2)
    // theta_{1,p} = sum_{j+2m=p}   v^j q^m (u - 2 H_m) / (j! (m!)^2)
    int target = (alpha == 2) ? p + 1 : p;
    for (int m = 0; 2 * m <= target; ++m) {
        int j = target - 2 * m;
        Rat c = rat_factorial_inv(j) * rat_factorial_inv(m) * rat_factorial_inv(m);
        DiffPoly base = v.pow(j) * q.pow(m) * c;
        if (alpha == 2) {
            out += base;
        } else {
            Rat harmonic(0);
            for (int i = 1; i <= m; ++i) harmonic += Rat(1, i);
            out += base * (u - DiffPoly::constant(ctx_, Rat(2) * harmonic));
        }
    }
    return out;
}

std::vector<DiffPoly> P1Sector::flow_t(int k) const {
    DiffPoly th = theta(1, k + 1);
    return {th.partial(1, 0).dx(), th.partial(0, 0).dx()};
}

std::vector<DiffPoly> P1Sector::flow_s(int k) const {
    DiffPoly th = theta(2, k + 1);
    return {th.partial(1, 0).dx(), th.partial(0, 0).dx()};
}

namespace {

/// Determinant of a small DiffPoly matrix by cofactor expansion.
DiffPoly small_det(const JetContextPtr& ctx, std::vector<std::vector<DiffPoly>> m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    DiffPoly out = DiffPoly::zero(ctx);
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) continue;
        std::vector<std::vector<DiffPoly>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<DiffPoly> row;
            for (std::size_t cc = 0; cc < n; ++cc)
                if (cc != c) row.push_back(m[r][cc]);
            minor.push_back(std::move(row));
        }
        DiffPoly term = m[0][c] * small_det(ctx, std::move(minor));
        if (c % 2 == 1) term = -term;
        out += term;
    }
    return out;
}

}  // namespace

std::vector<DiffPoly> P1Sector::genus1_gradient() const {
    DiffPoly v = DiffPoly::jet(ctx_, 0, 0);
    DiffPoly u = DiffPoly::jet(ctx_, 1, 0);
    DiffPoly vx = DiffPoly::jet(ctx_, 0, 1);
    DiffPoly ux = DiffPoly::jet(ctx_, 1, 1);
    DiffPoly q = DiffPoly::exp_atom(ctx_, q_atom_);
    DiffPoly one = DiffPoly::constant(ctx_, Rat(1));

    // The lambda-matched system, cleared by Delta^2, in y = v - lambda:
    //   A_0^1 Delta^2 = -y Delta          A_0^2 Delta^2 = 2 Delta
    //   A_1^1 Delta^2 = -(8q + y^2) v_x + 6 q y u_x
    //   A_1^2 Delta^2 = 6 y v_x - 12 q u_x
    //   rhs  Delta^2 = -(1/8)(4q + y^2) - Delta/8 = -q
    // columns: (dF/dv, dF/du, dF/dv_x, dF/du_x), rows: powers y^0..y^3
    auto col = [&](std::initializer_list<DiffPoly> ys) {
        return std::vector<DiffPoly>(ys);
    };
    std::vector<std::vector<DiffPoly>> cols;  // cols[i][ypow]
    DiffPoly z = DiffPoly::zero(ctx_);
    // -y(4q - y^2) = -4q y + y^3
    cols.push_back(col({z, Rat(-4) * q, z, one}));
    // 2(4q - y^2) = 8q - 2y^2
    cols.push_back(col({Rat(8) * q, z, Rat(-2) * one, z}));
    cols.push_back(col({Rat(-8) * q * vx, Rat(6) * q * ux, -vx, z}));
    cols.push_back(col({Rat(-12) * q * ux, Rat(6) * vx, z, z}));
    std::vector<DiffPoly> rhs = col({-q, z, z, z});

    std::vector<std::vector<DiffPoly>> M(4, std::vector<DiffPoly>(4, z));
    for (int i = 0; i < 4; ++i)
        for (int ypow = 0; ypow < 4; ++ypow) M[ypow][i] = cols[i][ypow];

    DiffPoly det = small_det(ctx_, M);
    if (det.is_zero())
        raise(ErrorKind::SolverFailure, "genus1_solve: singular lambda-matched system");

    std::vector<DiffPoly> grad;
    for (int i = 0; i < 4; ++i) {
        auto Mi = M;
        for (int ypow = 0; ypow < 4; ++ypow) Mi[ypow][i] = rhs[ypow];
        DiffPoly deti = small_det(ctx_, Mi);
        auto fi = DiffPoly::divide_with_atoms(deti, det);
        if (!fi)
            raise(ErrorKind::SolverFailure,
                  "genus1_solve: Cramer quotient leaves the localized ring");
        grad.push_back(*fi);
    }

    // closedness before integration
    std::array<std::pair<int, int>, 4> vars{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (grad[i].partial(vars[j].first, vars[j].second) !=
                grad[j].partial(vars[i].first, vars[i].second))
                raise(ErrorKind::SolverFailure, "genus1_solve: non-closed gradient");
    return grad;
}

DiffPoly P1Sector::genus1_solve() const {
    auto grad = genus1_gradient();
    std::array<std::pair<int, int>, 4> vars{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};

    // peel c log(D) off the v_x component, then integrate the polynomial rest
    DiffPoly D = DiffPoly::den_atom(ctx_, d_atom_);
    DiffPoly dDdvx = D.partial(0, 1);
    auto c = DiffPoly::divide_with_atoms(grad[2], dDdvx * DiffPoly::inv_atom(ctx_, d_atom_));
    if (!c || !c->is_constant())
        raise(ErrorKind::SolverFailure, "genus1_solve: log coefficient not constant");
    Rat logc = c->constant_term();

    std::vector<DiffPoly> rest = grad;
    for (int i = 0; i < 4; ++i)
        rest[i] -= DiffPoly::log_atom(ctx_, d_atom_).partial(vars[i].first, vars[i].second) * logc;
    for (const auto& r : rest)
        if (!r.is_jet_polynomial())
            raise(ErrorKind::SolverFailure, "genus1_solve: residual gradient not polynomial");

    // Euler integration by total polynomial degree
    DiffPoly weighted = DiffPoly::zero(ctx_);
    for (int i = 0; i < 4; ++i)
        weighted += DiffPoly::jet(ctx_, vars[i].first, vars[i].second) * rest[i];
    DiffPoly F = DiffPoly::log_atom(ctx_, d_atom_) * logc;
    for (const auto& [m, coef] : weighted.data().num) {
        long long deg = m.jet_degree();
        if (deg <= 0)
            raise(ErrorKind::SolverFailure, "genus1_solve: cannot integrate degree-0 remainder");
        PolyData d;
        d.num.emplace(m, coef * Rat(1, deg));
        F += DiffPoly(ctx_, std::move(d));
    }

    for (int i = 0; i < 4; ++i)
        if (F.partial(vars[i].first, vars[i].second) != grad[i])
            raise(ErrorKind::InternalConsistency, "genus1_solve: integration certificate failed");
    return F;
}

namespace {

const char* kF2Display =
    "-(exp{u}^2*inv{D}^4)*("
    "  512*v[u]_1^3*v[v]_1*v[v]_2^3"
    "  + 384*exp{u}*v[u]_1^3*v[v]_2*(v[u]_1^2 + 2*v[u]_2)"
    "      *(v[u]_1^2*v[v]_1 + 2*v[u]_2*v[v]_1 - 2*v[u]_1*v[v]_2)"
    "  - 64*exp{u}^2*v[u]_1^4*(v[u]_1^2 + 2*v[u]_2)^3)"
    "-(exp{u}*inv{D}^3)*("
    "  256*v[u]_1*v[v]_1*v[v]_2^3"
    "  + 12*exp{u}*v[u]_1*(28*v[u]_1^4*v[v]_1*v[v]_2 + 116*v[u]_1^2*v[u]_2*v[v]_1*v[v]_2"
    "      + 64*v[u]_2^2*v[v]_1*v[v]_2 + 28*v[u]_1*v[v]_1*v[u]_3*v[v]_2 - 69*v[u]_1^3*v[v]_2^2"
    "      - 128*v[u]_1*v[u]_2*v[v]_2^2 + 14*v[u]_1^3*v[v]_1*v[v]_3"
    "      + 28*v[u]_1*v[v]_1*v[u]_2*v[v]_3 - 28*v[u]_1^2*v[v]_2*v[v]_3)"
    "  - exp{u}^2*v[u]_1^2*(v[u]_1^2 + 2*v[u]_2)"
    "      *(121*v[u]_1^4 + 538*v[u]_1^2*v[u]_2 + 256*v[u]_2^2 + 168*v[u]_1*v[u]_3))"
    "+(exp{u}*inv{D}^2)*("
    "  -2*(42*v[u]_1^3*v[v]_1*v[v]_2 + 126*v[u]_1*v[u]_2*v[v]_1*v[v]_2 + 42*v[u]_3*v[v]_1*v[v]_2"
    "      - 95*v[u]_1^2*v[v]_2^2 - 96*v[u]_2*v[v]_2^2 + 30*v[u]_1^2*v[v]_1*v[v]_3"
    "      + 42*v[u]_2*v[v]_1*v[v]_3 - 126*v[u]_1*v[v]_2*v[v]_3 + 20*v[u]_1*v[v]_1*v[v]_4)"
    "  + exp{u}*(72*v[u]_1^6 + 479*v[u]_1^4*v[u]_2 + 626*v[u]_1^2*v[u]_2^2 + 64*v[u]_2^3"
    "      + 224*v[u]_1^3*v[u]_3 + 252*v[u]_1*v[u]_2*v[u]_3 + 40*v[u]_1^2*v[u]_4))"
    "-(inv{D})*("
    "  22*v[v]_2^2 - 24*v[v]_1*v[v]_3"
    "  + exp{u}*(17*v[u]_1^4 + 102*v[u]_1^2*v[u]_2 + 56*v[u]_2^2 + 68*v[u]_1*v[u]_3"
    "      + 20*v[u]_4))"
    "+ 7*v[u]_2";

const char* kF20Display =
    "7/5760*v[u]_2 + 11/2880*v[v]_2^2*inv{vx}^2 - 1/240*v[v]_3*inv{vx}";

}  // namespace

DiffPoly P1Sector::f2_full() const {
    return DiffPoly::parse(ctx_, kF2Display) * Rat(1, 5760);
}

DiffPoly P1Sector::f2_degree0() const { return DiffPoly::parse(ctx_, kF20Display); }

P1Sector::F2FixtureReport P1Sector::f2_fixture() const {
    F2FixtureReport rep;
    rep.f20 = f2_degree0();

    // q -> 0: drop q-positive terms; inv{D}^m becomes inv{vx}^{2m}
    DiffPoly F2 = f2_full();
    std::int32_t qid = Monomial::exp_id(q_atom_);
    PolyData out;
    int dpow = static_cast<std::size_t>(d_atom_) < F2.data().den.size()
                   ? F2.data().den[d_atom_]
                   : 0;
    out.den.assign(ctx_->n_den_atoms(), 0);
    out.den[vx_atom_] = 2 * dpow;
    if (static_cast<std::size_t>(vx_atom_) < F2.data().den.size())
        out.den[vx_atom_] += F2.data().den[vx_atom_];
    for (const auto& [m, c] : F2.data().num) {
        int e = m.exponent(qid);
        if (e < 0)
            raise(ErrorKind::InternalConsistency, "f2_fixture: negative q power in the display");
        if (e > 0) continue;
        out.num.emplace(m, c);
    }
    rep.q_to_zero = DiffPoly(ctx_, std::move(out));
    rep.difference = rep.q_to_zero - rep.f20;
    rep.equal = rep.difference.is_zero();
    return rep;
}

JetMap P1Sector::substitution(const EpsSeries& delta_f, int E) const {
    JetMap map = JetMap::identity(ctx_, E);
    // u -> u + eps^2 dx^2 DeltaF ; v -> v + eps^2 dx d_{s_0} DeltaF
    EpsSeries tr = delta_f.truncated(E - 2);
    map.comp[1] += tr.dx(2).shifted(2);
    std::vector<EpsSeries> s0rhs;
    for (const auto& f : flow_s(0)) s0rhs.push_back(EpsSeries::lift(f, E));
    EpsSeries ds0 = flow_derivative(s0rhs, tr, std::max(E - 2, 0));
    map.comp[0] += ds0.dx().shifted(2);
    return map;
}

P1Sector::PolyProbeReport P1Sector::poly_probe_s0(int E) const {
    PolyProbeReport rep;
    EpsSeries delta_f = EpsSeries::lift(genus1_solve(), E);
    JetMap map = substitution(delta_f, E);

    // intermediate (before re-expressing in the new variables): D-rational
    std::vector<EpsSeries> s0rhs;
    for (const auto& f : flow_s(0)) s0rhs.push_back(EpsSeries::lift(f, E));
    for (int a = 0; a < 2 && !rep.intermediate_has_denominators; ++a) {
        EpsSeries mid = flow_derivative(s0rhs, map.comp[a], E);
        for (const auto& [k, c] : mid.coefficients())
            if (k > 0 && c.has_denominators()) rep.intermediate_has_denominators = true;
    }

    rep.transformed = transform_flow(flow_s(0), map, E);
    rep.pass = true;
    for (const auto& comp : rep.transformed)
        for (const auto& [k, c] : comp.coefficients()) {
            (void)k;
            if (!c.is_jet_polynomial()) {
                rep.pass = false;
                rep.offending_term = c.str();
            }
        }
    return rep;
}

Rat P1Sector::cmp98_eps2_coefficient() const {
    Rat tr(0);
    for (int a = 0; a < ring_.n(); ++a) tr += Rat(1, 4) - ring_.mu(a) * ring_.mu(a);
    return tr * Rat(1, 2);
}

Rat P1Sector::biham12_eps2_coefficient() const {
    return Rat(1, 12) *
           (Rat(3 - ring_.d, 2) * Rat(ring_.n()) - ring_.pairing(ring_.c1, ring_.cdm1));
}

P1Sector::LambdaReport P1Sector::lambda_consistency(int deg_cap) const {
    LambdaReport rep;
    int P = deg_cap + 2;
    int nt = P + 1;
    int nv = 2 * nt;  // t_p -> p, s_p -> nt + p
    int D = deg_cap;

    // v(t): the one-point topological solution; u(t, s): linear-homogeneous
    // in s. Computed a few degrees deep so the jets stay exact through D.
    const int jet_margin = 4;
    const int Dv = D + jet_margin;
    TSeries v(nv, Dv);
    for (int it = 0; it <= Dv; ++it) {
        TSeries next(nv, Dv);
        TSeries vpow = TSeries::constant(nv, Dv, Rat(1));
        for (int p = 0; p <= P; ++p) {
            if (p > 0) vpow = vpow * v;
            next += TSeries::variable(nv, Dv, p) * vpow * rat_factorial_inv(p);
        }
        if (next == v) break;
        v = next;
    }
    TSeries u(nv, Dv);
    for (int it = 0; it <= Dv; ++it) {
        TSeries next(nv, Dv);
        TSeries vprev = TSeries::constant(nv, Dv, Rat(1));  // v^{p-1}
        TSeries vpow = TSeries::constant(nv, Dv, Rat(1));   // v^p
        for (int p = 0; p <= P; ++p) {
            if (p > 0) {
                vprev = vpow;
                vpow = vpow * v;
            }
            next += TSeries::variable(nv, Dv, nt + p) * vpow * rat_factorial_inv(p);
            if (p >= 1)
                next += TSeries::variable(nv, Dv, p) * vprev * u * rat_factorial_inv(p - 1);
        }
        if (next == u) break;
        u = next;
    }

    // jets via d_x = d_{t_0}
    std::vector<TSeries> vj{v}, uj{u};
    for (int k = 1; k <= jet_margin; ++k) {
        vj.push_back(vj.back().derivative(0));
        uj.push_back(uj.back().derivative(0));
    }
    for (int k = 0; k <= jet_margin; ++k) {
        vj[k] = vj[k].truncated(D);
        uj[k] = uj[k].truncated(D);
    }
    TSeries F = eval_diffpoly(
        f2_degree0(),
        [&](int comp, int k) { return comp == 0 ? vj.at(k) : uj.at(k); }, nv, D);

    auto check = [&](const std::vector<int>& spec, bool omega) {
        LambdaCheck c;
        c.spec = spec;
        c.omega_insertion = omega;
        std::vector<int> vars;
        Rat mult(1);
        if (omega) {
            vars.push_back(nt + spec[0]);
            std::vector<int> rest(spec.begin() + 1, spec.end());
            std::sort(rest.begin(), rest.end());
            for (std::size_t i = 0; i < rest.size();) {
                std::size_t j = i;
                while (j < rest.size() && rest[j] == rest[i]) ++j;
                mult *= Rat(factorial(static_cast<long>(j - i)));
                i = j;
            }
            for (int k : rest) vars.push_back(k);
        } else {
            std::vector<int> s = spec;
            std::sort(s.begin(), s.end());
            for (std::size_t i = 0; i < s.size();) {
                std::size_t j = i;
                while (j < s.size() && s[j] == s[i]) ++j;
                mult *= Rat(factorial(static_cast<long>(j - i)));
                i = j;
            }
            for (int k : s) vars.push_back(k);
        }
        Rat coeff = F.coefficient_of(vars) * mult;
        if (omega) {
            // single omega insertion isolates the lambda_2 numbers
            c.got = coeff;
            c.expected = wk_genus2_lambda(c.spec, HodgeClass::Lambda2);
        } else {
            // all-1 insertions isolate -2 * lambda_1
            c.got = coeff * Rat(-1, 2);
            c.expected = wk_genus2_lambda(c.spec, HodgeClass::Lambda1);
        }
        c.ok = c.got == c.expected;
        if (!c.ok) rep.pass = false;
        rep.checks.push_back(std::move(c));
    };

    // multisets of size n with a prescribed sum (the dimension constraint)
    auto for_multisets = [&](int n, int total, const std::function<void(const std::vector<int>&)>& fn) {
        std::vector<int> cur;
        std::function<void(int, int, int)> rec = [&](int left, int sum, int minv) {
            if (left == 0) {
                if (sum == 0) fn(cur);
                return;
            }
            for (int k = minv; k <= std::min(P, sum); ++k) {
                cur.push_back(k);
                rec(left - 1, sum - k, k);
                cur.pop_back();
            }
        };
        rec(n, total, 0);
    };

    for (int n = 1; n <= deg_cap; ++n) {
        // all-1 insertions: sum k_i = n + 2 isolates -2 lambda_1
        for_multisets(n, n + 2, [&](const std::vector<int>& spec) { check(spec, false); });
        // one omega insertion: sum k_i = n + 1 isolates lambda_2
        for_multisets(n, n + 1, [&](const std::vector<int>& ms) {
            // each choice of the omega slot, deduplicated by value
            std::set<int> seen;
            for (std::size_t i = 0; i < ms.size(); ++i) {
                if (!seen.insert(ms[i]).second) continue;
                std::vector<int> spec{ms[i]};
                for (std::size_t j = 0; j < ms.size(); ++j)
                    if (j != i) spec.push_back(ms[j]);
                check(spec, true);
            }
        });
        // off-dimension samples must vanish on both routes
        if (n + 3 <= P) {
            check(std::vector<int>(1, n + 3), false);
            check(std::vector<int>(1, n + 3), true);
        }
    }
    return rep;
}

}  // namespace tophier
