#include "tophier/gwzero.hpp"

#include <sstream>

namespace tophier {

namespace {

JetContextPtr make_ctx(const CohomologyRing& ring, const std::string& prefix) {
    std::vector<std::string> labels;
    for (const auto& b : ring.basis) labels.push_back(b);
    if (!prefix.empty())
        for (auto& l : labels) l = prefix + l;
    auto ctx = JetContext::create(labels);
    ctx->declare_den_atom("vx", DiffPoly::jet(ctx, 0, 1));
    ctx->declare_log_atom("vx");
    return ctx;
}

}  // namespace

DegreeZeroSector::DegreeZeroSector(CohomologyRing ring) : ring_(std::move(ring)) {
    ring_.validate();
    vctx_ = make_ctx(ring_, "");
    uctx_ = make_ctx(ring_, "u:");
}

CohPoly DegreeZeroSector::jet_vector(int order) const {
    CohPoly v;
    for (int a = 0; a < ring_.n(); ++a) v.push_back(DiffPoly::jet(vctx_, a, order));
    return v;
}

CohPoly DegreeZeroSector::cup(const CohPoly& a, const CohPoly& b) const {
    int n = ring_.n();
    CohPoly r(n, DiffPoly::zero(vctx_));
    for (int i = 0; i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (b[j].is_zero()) continue;
            for (int g = 0; g < n; ++g) {
                const Rat& c = ring_.cup[i][j][g];
                if (c.is_zero()) continue;
                r[g] += a[i] * b[j] * c;
            }
        }
    }
    return r;
}

CohPoly DegreeZeroSector::cup_const(const CohVec& a, const CohPoly& b) const {
    int n = ring_.n();
    CohPoly r(n, DiffPoly::zero(vctx_));
    for (int i = 0; i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (b[j].is_zero()) continue;
            for (int g = 0; g < n; ++g) {
                const Rat& c = ring_.cup[i][j][g];
                if (c.is_zero()) continue;
                r[g] += b[j] * (a[i] * c);
            }
        }
    }
    return r;
}

DiffPoly DegreeZeroSector::pairing(const CohVec& a, const CohPoly& b) const {
    DiffPoly r = DiffPoly::zero(vctx_);
    for (int i = 0; i < ring_.n(); ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < ring_.n(); ++j) {
            if (b[j].is_zero()) continue;
            r += b[j] * (a[i] * ring_.eta[i][j]);
        }
    }
    return r;
}

CohPoly DegreeZeroSector::cup_power(const CohPoly& a, int e) const {
    CohPoly r(ring_.n(), DiffPoly::zero(vctx_));
    r[0] = DiffPoly::constant(vctx_, Rat(1));
    for (int i = 0; i < e; ++i) r = cup(r, a);
    return r;
}

CohPoly DegreeZeroSector::log_vx() const {
    int n = ring_.n();
    // v_x = s (gamma_1 + N), s = v^{1}_x invertible, N nilpotent
    DiffPoly invs = DiffPoly::inv_atom(vctx_, 0);
    CohPoly N(n, DiffPoly::zero(vctx_));
    for (int a = 1; a < n; ++a) N[a] = DiffPoly::jet(vctx_, a, 1) * invs;
    CohPoly out(n, DiffPoly::zero(vctx_));
    out[0] = DiffPoly::log_atom(vctx_, 0);
    CohPoly p(n, DiffPoly::zero(vctx_));
    p[0] = DiffPoly::constant(vctx_, Rat(1));
    for (int j = 1; j <= ring_.d + 1; ++j) {
        p = cup(p, N);
        bool zero = true;
        for (const auto& c : p)
            if (!c.is_zero()) zero = false;
        if (zero) break;
        Rat coef(j % 2 == 1 ? 1 : -1, j);
        for (int a = 0; a < n; ++a) out[a] += p[a] * coef;
    }
    return out;
}

std::vector<DiffPoly> DegreeZeroSector::phb0_flow(int alpha, int p) const {
    if (alpha < 1 || alpha > ring_.n() || p < 0)
        raise(ErrorKind::Precondition, "phb0_flow: 1 <= alpha <= n, p >= 0");
    CohPoly vp = cup_power(jet_vector(0), p + 1);
    CohPoly g = cup_const(ring_.basis_vec(alpha - 1), vp);
    std::vector<DiffPoly> out;
    Rat c = rat_factorial_inv(p + 1);
    for (auto& comp : g) out.push_back((comp * c).dx());
    return out;
}

DiffPoly DegreeZeroSector::genus1() const {
    DiffPoly first = pairing(ring_.cd, log_vx());
    DiffPoly second = pairing(ring_.cdm1, jet_vector(0));
    return (first - second) * Rat(1, 24);
}

JetMap DegreeZeroSector::substitution(int E) const {
    DiffPoly F1 = genus1();
    int n = ring_.n();
    // u_alpha = v_alpha + eps^2 d_x d_{t^alpha_0} F1, raised with eta^{-1}
    std::vector<DiffPoly> cov;
    for (int a = 0; a < n; ++a) {
        std::vector<EpsSeries> rhs;
        auto flow = phb0_flow(a + 1, 0);
        for (auto& f : flow) rhs.push_back(EpsSeries::lift(f, 0));
        EpsSeries dtF = flow_derivative(rhs, F1, 0);
        cov.push_back(dtF.at(0).dx());
    }
    JetMap map = JetMap::identity(vctx_, E);
    for (int a = 0; a < n; ++a) {
        DiffPoly corr = DiffPoly::zero(vctx_);
        for (int b = 0; b < n; ++b)
            if (!ring_.eta_inv[a][b].is_zero()) corr += cov[b] * ring_.eta_inv[a][b];
        map.comp[a] += EpsSeries::monomial(corr, 2, E);
    }

    // certificate against the closed vector form
    CohPoly closed(n, DiffPoly::zero(vctx_));
    {
        CohPoly lg = log_vx();
        CohPoly t1 = cup_const(ring_.cd, lg);
        CohPoly t2(n, DiffPoly::zero(vctx_));
        for (int a = 0; a < n; ++a) t2[a] = DiffPoly::jet(vctx_, a, 2);
        CohPoly t2c = cup_const(ring_.cdm1, t2);
        for (int a = 0; a < n; ++a)
            closed[a] = (t1[a].dx(2) - t2c[a]) * Rat(1, 24);
    }
    for (int a = 0; a < n; ++a)
        if (map.comp[a].at(2) != closed[a])
            raise(ErrorKind::InternalConsistency,
                  "substitution: derivative route disagrees with the closed vector form");
    return map;
}

DegreeZeroSector::FlowResult DegreeZeroSector::htt0_flow(int alpha, int p, int E,
                                                         bool override_dim_gate) const {
    if (ring_.d < 4 && !override_dim_gate)
        raise(ErrorKind::Precondition,
              "htt0_flow: requires complex dimension >= 4 (pass the override to experiment)");
    FlowResult res;
    JetMap map = substitution(E);
    res.transformed = transform_flow(phb0_flow(alpha, p), map, E);

    // the displayed right-hand side, with (p-1)!, (p-2)! terms dropping
    int n = ring_.n();
    CohPoly u = jet_vector(0);
    CohPoly ux = jet_vector(1);
    CohPoly uxx = jet_vector(2);
    CohPoly acc = cup_power(u, p + 1);
    for (auto& c : acc) c *= rat_factorial_inv(p + 1);
    CohPoly bracket22(n, DiffPoly::zero(vctx_));
    if (p >= 1) {
        CohPoly t = cup_const(ring_.cd, cup(cup_power(u, p - 1), uxx));
        for (int a = 0; a < n; ++a) bracket22[a] += t[a] * (Rat(2) * rat_factorial_inv(p - 1));
    }
    if (p >= 2) {
        CohPoly t = cup_const(ring_.cd, cup(cup_power(u, p - 2), cup(ux, ux)));
        for (int a = 0; a < n; ++a) bracket22[a] += t[a] * rat_factorial_inv(p - 2);
    }
    if (p >= 1) {
        CohPoly t = cup_const(ring_.cdm1, cup(cup_power(u, p - 1), cup(ux, ux)));
        for (int a = 0; a < n; ++a) bracket22[a] -= t[a] * rat_factorial_inv(p - 1);
    }
    CohPoly inner(n, DiffPoly::zero(vctx_));
    for (int a = 0; a < n; ++a) inner[a] = acc[a];
    CohPoly direct = cup_const(ring_.basis_vec(alpha - 1), inner);
    CohPoly direct2 = cup_const(ring_.basis_vec(alpha - 1), bracket22);
    res.direct.clear();
    for (int a = 0; a < n; ++a) {
        EpsSeries s(vctx_, E);
        s.set(0, direct[a].dx());
        if (E >= 2) s.set(2, (direct2[a] * Rat(1, 24)).dx());
        res.direct.push_back(s);
    }

    res.certificate = true;
    for (int a = 0; a < n; ++a)
        if (!EpsSeries::equal_through(res.transformed[a], res.direct[a], std::min(E, 2)))
            res.certificate = false;
    // genus >= 2 vanishing: nothing beyond eps^2 may survive
    for (int a = 0; a < n; ++a)
        for (const auto& [k, c] : res.transformed[a].coefficients())
            if (k > 2 && !c.is_zero()) res.certificate = false;
    if (!res.certificate)
        raise(ErrorKind::VerificationFailure,
              "htt0_flow: transformed flow does not match the displayed hierarchy");
    return res;
}

LocalPoissonBracket DegreeZeroSector::bracket1(int E) const {
    int n = ring_.n();
    LocalPoissonBracket b(vctx_, E);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            if (ring_.eta_inv[a][c].is_zero()) continue;
            DeltaTerm t;
            t.coef = EpsSeries::lift(DiffPoly::constant(vctx_, ring_.eta_inv[a][c]), E);
            t.order = 1;
            b.add_term(a, c, t);
        }
    return b;
}

LocalPoissonBracket DegreeZeroSector::bracket2(int E) const {
    int n = ring_.n();
    LocalPoissonBracket b(vctx_, E);
    for (int a = 0; a < n; ++a) {
        for (int c = 0; c < n; ++c) {
            // <(gamma^a/2 + mu(gamma^a)) gamma^c, v(x)> delta'
            //  + <gamma^a (gamma^c/2 + mu(gamma^c)), v(y)> delta'
            //  + <gamma^a gamma^c, c_1> delta'
            CohVec ga = ring_.dual_basis_vec(a);
            CohVec gc = ring_.dual_basis_vec(c);
            CohVec prod = ring_.cup_vec(ga, gc);
            Rat ma = Rat(1, 2) + Rat(ring_.d) * Rat(1, 2) - Rat(ring_.deg[a]);
            Rat mc = Rat(1, 2) + Rat(ring_.d) * Rat(1, 2) - Rat(ring_.deg[c]);

            DiffPoly xcoef = DiffPoly::zero(vctx_);
            DiffPoly ycoef = DiffPoly::zero(vctx_);
            for (int i = 0; i < n; ++i) {
                if (prod[i].is_zero()) continue;
                for (int j = 0; j < n; ++j) {
                    if (ring_.eta[i][j].is_zero()) continue;
                    xcoef += DiffPoly::jet(vctx_, j, 0) * (prod[i] * ring_.eta[i][j] * ma);
                    ycoef += DiffPoly::jet(vctx_, j, 0) * (prod[i] * ring_.eta[i][j] * mc);
                }
            }
            Rat cterm = ring_.pairing(prod, ring_.c1);

            std::vector<DeltaTerm> raw;
            if (!xcoef.is_zero()) {
                DeltaTerm t;
                t.coef = EpsSeries::lift(xcoef, E);
                t.order = 1;
                raw.push_back(t);
            }
            if (!ycoef.is_zero()) {
                DeltaTerm t;
                t.coef = EpsSeries::lift(ycoef, E);
                t.order = 1;
                t.at_y = true;
                raw.push_back(t);
            }
            if (!cterm.is_zero()) {
                DeltaTerm t;
                t.coef = EpsSeries::lift(DiffPoly::constant(vctx_, cterm), E);
                t.order = 1;
                raw.push_back(t);
            }
            b.add_raw(a, c, raw);
        }
    }
    return b;
}

LocalPoissonBracket DegreeZeroSector::lower_indices(const LocalPoissonBracket& b) const {
    int n = ring_.n();
    LocalPoissonBracket out(b.ctx(), b.eps_order());
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            for (int g = 0; g < n; ++g) {
                if (ring_.eta[a][g].is_zero()) continue;
                for (int r = 0; r < n; ++r) {
                    if (ring_.eta[c][r].is_zero()) continue;
                    Rat f = ring_.eta[a][g] * ring_.eta[c][r];
                    for (const auto& [s, lam] : b.entry(g, r)) {
                        for (std::size_t lp = 0; lp < lam.size(); ++lp) {
                            if (lam[lp].zero()) continue;
                            DeltaTerm t;
                            t.coef = lam[lp];
                            t.coef *= f;
                            t.order = s;
                            t.lambda_pow = static_cast<int>(lp);
                            out.add_term(a, c, t);
                        }
                    }
                }
            }
        }
    return out;
}

LocalPoissonBracket DegreeZeroSector::expected_bracket1_cov(int E) const {
    int n = ring_.n();
    LocalPoissonBracket b(vctx_, E);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            std::vector<DeltaTerm> raw;
            if (!ring_.eta[a][c].is_zero()) {
                DeltaTerm t;
                t.coef = EpsSeries::lift(DiffPoly::constant(vctx_, ring_.eta[a][c]), E);
                t.order = 1;
                raw.push_back(t);
            }
            Rat k = ring_.pairing(ring_.basis_vec(a), ring_.cdm1) *
                        ring_.pairing(ring_.basis_vec(c), ring_.basis_vec(n - 1)) +
                    ring_.pairing(ring_.basis_vec(c), ring_.cdm1) *
                        ring_.pairing(ring_.basis_vec(a), ring_.basis_vec(n - 1));
            if (!k.is_zero()) {
                DeltaTerm t;
                t.coef = EpsSeries::monomial(DiffPoly::constant(vctx_, k * Rat(-1, 12)), 2, E);
                t.order = 3;
                raw.push_back(t);
            }
            b.add_raw(a, c, raw);
        }
    return b;
}

LocalPoissonBracket DegreeZeroSector::expected_bracket2_cov(int E) const {
    int n = ring_.n();
    LocalPoissonBracket b(vctx_, E);
    auto u_pair = [&](const CohVec& w) {
        // <w, u(x)> as a DiffPoly in contravariant jets
        DiffPoly r = DiffPoly::zero(vctx_);
        for (int i = 0; i < n; ++i) {
            if (w[i].is_zero()) continue;
            for (int j = 0; j < n; ++j)
                if (!ring_.eta[i][j].is_zero())
                    r += DiffPoly::jet(vctx_, j, 0) * (w[i] * ring_.eta[i][j]);
        }
        return r;
    };
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            CohVec ga = ring_.basis_vec(a);
            CohVec gc = ring_.basis_vec(c);
            CohVec prod = ring_.cup_vec(ga, gc);
            Rat ma = Rat(1, 2) + ring_.mu(a);
            Rat mc = Rat(1, 2) + ring_.mu(c);

            std::vector<DeltaTerm> raw;
            DiffPoly xc = u_pair(ring_.cup_vec(ga, gc));
            if (!xc.is_zero()) {
                DeltaTerm t;
                t.coef = EpsSeries::lift(xc * ma, E);
                t.order = 1;
                raw.push_back(t);
                DeltaTerm ty;
                ty.coef = EpsSeries::lift(xc * mc, E);
                ty.order = 1;
                ty.at_y = true;
                raw.push_back(ty);
            }
            Rat cterm = ring_.pairing(prod, ring_.c1);
            if (!cterm.is_zero()) {
                DeltaTerm t;
                t.coef = EpsSeries::lift(DiffPoly::constant(vctx_, cterm), E);
                t.order = 1;
                raw.push_back(t);
            }

            // -(eps^2/12)[ d_x( <a,c_{d-1}> <c gamma_n, u(x)> delta'' )
            //              - d_y( <c,c_{d-1}> <a gamma_n, u(y)> delta'' ) ]
            Rat acd = ring_.pairing(ga, ring_.cdm1);
            Rat ccd = ring_.pairing(gc, ring_.cdm1);
            DiffPoly cgn = u_pair(ring_.cup_vec(gc, ring_.basis_vec(n - 1)));
            DiffPoly agn = u_pair(ring_.cup_vec(ga, ring_.basis_vec(n - 1)));
            if (!acd.is_zero() && !cgn.is_zero()) {
                DeltaTerm t2;  // C'(x) delta''
                t2.coef = EpsSeries::monomial(cgn.dx() * (acd * Rat(-1, 12)), 2, E);
                t2.order = 2;
                raw.push_back(t2);
                DeltaTerm t3;  // C(x) delta'''
                t3.coef = EpsSeries::monomial(cgn * (acd * Rat(-1, 12)), 2, E);
                t3.order = 3;
                raw.push_back(t3);
            }
            if (!ccd.is_zero() && !agn.is_zero()) {
                // -d_y(C(y) delta'') = -C'(y) delta'' + C(y) delta'''
                DeltaTerm t2;
                t2.coef = EpsSeries::monomial(agn.dx() * (ccd * Rat(1, 12)), 2, E);
                t2.order = 2;
                t2.at_y = true;
                raw.push_back(t2);
                DeltaTerm t3;
                t3.coef = EpsSeries::monomial(agn * (ccd * Rat(-1, 12)), 2, E);
                t3.order = 3;
                t3.at_y = true;
                raw.push_back(t3);
            }

            // +(eps^2/12) <a b, (3-d)/2 c_d - c_1 c_{d-1}> delta'''
            CohVec mix = ring_.cup_vec(ring_.c1, ring_.cdm1);
            CohVec combo(n, Rat(0));
            for (int i = 0; i < n; ++i)
                combo[i] = Rat(3 - ring_.d, 2) * ring_.cd[i] - mix[i];
            Rat last = ring_.pairing(prod, combo);
            if (!last.is_zero()) {
                DeltaTerm t;
                t.coef = EpsSeries::monomial(DiffPoly::constant(vctx_, last * Rat(1, 12)), 2, E);
                t.order = 3;
                raw.push_back(t);
            }
            b.add_raw(a, c, raw);
        }
    return b;
}

DegreeZeroSector::BracketReport DegreeZeroSector::deg0_brackets(int E,
                                                                bool override_dim_gate) const {
    if (ring_.d < 4 && !override_dim_gate)
        raise(ErrorKind::Precondition,
              "deg0_brackets: requires complex dimension >= 4 (pass the override to experiment)");
    BracketReport rep;
    JetMap map = substitution(E);
    JetMap inv = invert_near_identity(map, E);

    LocalPoissonBracket t1 = transform_bracket(bracket1(E), map, inv, E);
    LocalPoissonBracket t2 = transform_bracket(bracket2(E), map, inv, E);
    LocalPoissonBracket t1cov = lower_indices(t1);
    LocalPoissonBracket t2cov = lower_indices(t2);

    rep.first_matches = LocalPoissonBracket::equal_through(t1cov, expected_bracket1_cov(E), E);
    rep.second_matches = LocalPoissonBracket::equal_through(t2cov, expected_bracket2_cov(E), E);
    rep.skew_ok = t1.is_skew_symmetric() && t2.is_skew_symmetric();

    // scalar reduction: the (1,1) covariant entry of the second bracket
    rep.scalar_eps2_coefficient =
        Rat(1, 12) * (Rat(3 - ring_.d, 2) * Rat(ring_.n()) - ring_.pairing(ring_.c1, ring_.cdm1));
    LamPoly d3 = t2cov.coefficient(0, 0, 3);
    EpsSeries got = d3.empty() ? EpsSeries(vctx_, E) : d3[0];
    DiffPoly expect = DiffPoly::constant(vctx_, rep.scalar_eps2_coefficient);
    rep.scalar_matches = got.at(0).is_zero() && got.at(2) == expect;
    if (!rep.scalar_matches) {
        rep.detail = "delta''' coefficient of {u_1(x), u_1(y)}_2: got " + got.str() +
                     ", expected eps^2*(" + expect.str() + ")";
    }
    return rep;
}

std::vector<TSeries> DegreeZeroSector::vtop_vector(int D, int P) const {
    int n = ring_.n();
    int nv = (P + 1) * n;
    std::vector<TSeries> v(n, TSeries(nv, D));
    for (int iter = 0; iter <= D; ++iter) {
        // next = sum_p t_p v^p / p!
        std::vector<TSeries> next(n, TSeries(nv, D));
        std::vector<TSeries> vpow(n, TSeries(nv, D));
        vpow[0] = TSeries::constant(nv, D, Rat(1));
        for (int p = 0; p <= P; ++p) {
            if (p > 0) {
                // vpow = vpow cup v
                std::vector<TSeries> np(n, TSeries(nv, D));
                for (int i = 0; i < n; ++i) {
                    if (vpow[i].is_zero()) continue;
                    for (int j = 0; j < n; ++j) {
                        if (v[j].is_zero()) continue;
                        for (int g = 0; g < n; ++g) {
                            const Rat& c = ring_.cup[i][j][g];
                            if (c.is_zero()) continue;
                            np[g] += vpow[i] * v[j] * c;
                        }
                    }
                }
                vpow = std::move(np);
            }
            Rat f = rat_factorial_inv(p);
            for (int a = 0; a < n; ++a) {
                // t_p cup vpow, component by component
                for (int i = 0; i < n; ++i) {
                    if (vpow[i].is_zero()) continue;
                    for (int g = 0; g < n; ++g) {
                        const Rat& c = ring_.cup[a][i][g];
                        if (c.is_zero()) continue;
                        next[g] += TSeries::variable(nv, D, tvar_index(a, p)) * vpow[i] * (c * f);
                    }
                }
            }
        }
        if (next == v) break;
        v = std::move(next);
    }
    return v;
}

TSeries DegreeZeroSector::tau0_log(int D, int P) const {
    int n = ring_.n();
    int nv = (P + 1) * n;
    // W = sum_p t_p / p!
    std::vector<TSeries> W(n, TSeries(nv, D));
    for (int p = 0; p <= P; ++p) {
        Rat f = rat_factorial_inv(p);
        for (int a = 0; a < n; ++a)
            W[a] += TSeries::variable(nv, D, tvar_index(a, p)) * f;
    }
    TSeries out(nv, D);
    std::vector<TSeries> Wm = W;
    for (int m = 2; m <= D; ++m) {
        // Wm = W^(m)
        std::vector<TSeries> np(n, TSeries(nv, D));
        for (int i = 0; i < n; ++i) {
            if (Wm[i].is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                if (W[j].is_zero()) continue;
                for (int g = 0; g < n; ++g) {
                    const Rat& c = ring_.cup[i][j][g];
                    if (c.is_zero()) continue;
                    np[g] += Wm[i] * W[j] * c;
                }
            }
        }
        Wm = std::move(np);
        if (m >= 3) {
            // int_X W^m = pairing with the unit = top coordinate
            TSeries integral(nv, D);
            for (int i = 0; i < n; ++i) {
                if (Wm[i].is_zero()) continue;
                for (int j = 0; j < n; ++j)
                    if (!ring_.eta[i][j].is_zero() && j == 0)
                        integral += Wm[i] * ring_.eta[i][j];
            }
            integral *= Rat(mpz_class(1), mpz_class(m) * (m - 1) * (m - 2));
            out += integral;
        }
    }
    return out;
}

TSeries DegreeZeroSector::genus1_at_vtop(int D, int P) const {
    int n = ring_.n();
    int nv = (P + 1) * n;
    DiffPoly F1 = genus1();
    int maxk = std::max(F1.max_jet_order(), 0);
    auto v = vtop_vector(D + maxk, P);
    std::vector<std::vector<TSeries>> jets;  // jets[k][alpha]
    jets.push_back(v);
    for (int k = 1; k <= maxk; ++k) {
        std::vector<TSeries> next;
        for (int a = 0; a < n; ++a) next.push_back(jets.back()[a].derivative(tvar_index(0, 0)));
        jets.push_back(std::move(next));
    }
    for (int k = 0; k <= maxk; ++k)
        for (int a = 0; a < n; ++a) jets[k][a] = jets[k][a].truncated(D);
    return eval_diffpoly(
        F1, [&](int comp, int k) { return jets.at(k).at(comp); }, nv, D);
}

}  // namespace tophier
