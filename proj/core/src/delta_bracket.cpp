#include "tophier/delta_bracket.hpp"

#include <sstream>

namespace tophier {

LamPoly lam_make(const EpsSeries& c, int lambda_pow) {
    LamPoly p(lambda_pow + 1, EpsSeries(c.ctx(), c.trunc()));
    p[lambda_pow] = c;
    return p;
}

void lam_add(LamPoly& a, const LamPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), EpsSeries(b.empty() ? nullptr : b[0].ctx()));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

bool lam_zero_through(const LamPoly& a, int E) {
    for (const auto& c : a)
        if (!c.is_zero_through(std::min(E, c.trunc()))) return false;
    return true;
}

bool lam_equal_through(const LamPoly& a, const LamPoly& b, int E) {
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= a.size()) {
            if (!b[i].is_zero_through(std::min(E, b[i].trunc()))) return false;
        } else if (i >= b.size()) {
            if (!a[i].is_zero_through(std::min(E, a[i].trunc()))) return false;
        } else if (!EpsSeries::equal_through(a[i], b[i], E)) {
            return false;
        }
    }
    return true;
}

void LocalPoissonBracket::add_term(int a, int b, const DeltaTerm& t) {
    std::vector<DeltaTerm> one{t};
    add_raw(a, b, one);
}

void LocalPoissonBracket::add_raw(int a, int b, const std::vector<DeltaTerm>& terms) {
    // gather per lambda power, normalize y-coefficients, merge
    std::map<int, std::vector<DeltaTerm>> by_lam;
    for (const auto& t : terms) by_lam[t.lambda_pow].push_back(t);
    for (auto& [lp, group] : by_lam) {
        auto normal = normalize_delta(ctx_, E_, group);
        for (auto& [order, coef] : normal) {
            if (coef.zero()) continue;
            auto& slot = entries_[a][b][order];
            LamPoly add = lam_make(coef, lp);
            lam_add(slot, add);
        }
    }
    // drop empty orders
    auto& e = entries_[a][b];
    for (auto it = e.begin(); it != e.end();) {
        bool zero = true;
        for (const auto& c : it->second)
            if (!c.zero()) zero = false;
        if (zero)
            it = e.erase(it);
        else
            ++it;
    }
}

LamPoly LocalPoissonBracket::coefficient(int a, int b, int order) const {
    auto it = entries_[a][b].find(order);
    if (it == entries_[a][b].end()) return {};
    return it->second;
}

LocalPoissonBracket LocalPoissonBracket::transpose_negated() const {
    LocalPoissonBracket r(ctx_, E_);
    for (int a = 0; a < nfields(); ++a)
        for (int b = 0; b < nfields(); ++b)
            for (const auto& [s, lam] : entries_[b][a]) {
                // P_s(y) delta^(s)(y-x) = (-1)^s P_s(y) delta^(s)(x-y)
                for (std::size_t lp = 0; lp < lam.size(); ++lp) {
                    if (lam[lp].zero()) continue;
                    DeltaTerm t;
                    t.coef = lam[lp];
                    if (s % 2 == 1) t.coef *= Rat(-1);
                    t.coef *= Rat(-1);  // negation
                    t.order = s;
                    t.lambda_pow = static_cast<int>(lp);
                    t.at_y = true;
                    r.add_term(a, b, t);
                }
            }
    return r;
}

bool LocalPoissonBracket::is_skew_symmetric() const {
    return equal_through(*this, transpose_negated(), E_);
}

bool LocalPoissonBracket::equal_through(const LocalPoissonBracket& a,
                                        const LocalPoissonBracket& b, int E) {
    if (a.nfields() != b.nfields()) return false;
    int lim = std::min({E, a.E_, b.E_});
    for (int i = 0; i < a.nfields(); ++i)
        for (int j = 0; j < a.nfields(); ++j) {
            std::set<int> orders;
            for (const auto& [s, l] : a.entries_[i][j]) {
                (void)l;
                orders.insert(s);
            }
            for (const auto& [s, l] : b.entries_[i][j]) {
                (void)l;
                orders.insert(s);
            }
            for (int s : orders)
                if (!lam_equal_through(a.coefficient(i, j, s), b.coefficient(i, j, s), lim))
                    return false;
        }
    return true;
}

std::string LocalPoissonBracket::str() const {
    std::ostringstream os;
    for (int a = 0; a < nfields(); ++a)
        for (int b = 0; b < nfields(); ++b) {
            if (entries_[a][b].empty()) continue;
            os << "{" << ctx_->comp_label(a) << "(x), " << ctx_->comp_label(b) << "(y)}:\n";
            for (const auto& [s, lam] : entries_[a][b]) {
                for (std::size_t lp = 0; lp < lam.size(); ++lp) {
                    if (lam[lp].zero()) continue;
                    os << "  delta^(" << s << ")";
                    if (lp) os << " * lambda^" << lp;
                    os << " : " << lam[lp].str() << "\n";
                }
            }
        }
    return os.str();
}

std::map<int, EpsSeries> normalize_delta(const JetContextPtr& ctx, int E,
                                         const std::vector<DeltaTerm>& raw) {
    std::map<int, EpsSeries> out;
    auto add = [&](int order, const EpsSeries& c) {
        auto it = out.find(order);
        if (it == out.end())
            out.emplace(order, c);
        else
            it->second += c;
    };
    for (const auto& t : raw) {
        EpsSeries c = t.coef.truncated(E);
        if (!t.at_y) {
            add(t.order, c);
            continue;
        }
        // f(y) delta^(k)(x-y) = sum_j C(k,j) f^(j)(x) delta^(k-j)(x-y)
        EpsSeries der = c;
        for (int j = 0; j <= t.order; ++j) {
            EpsSeries term = der;
            term *= Rat(binomial(t.order, j));
            add(t.order - j, term);
            if (j < t.order) der = der.dx();
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.zero())
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

LocalPoissonBracket transform_bracket(const LocalPoissonBracket& b, const JetMap& map,
                                      const JetMap& inverse, int E) {
    const auto& ctx = map.ctx;
    int n = ctx->ncomp();
    map.validate_near_identity();

    // linearization L[alpha][gamma][k] = dU_alpha / dv^{gamma,k}
    std::vector<std::vector<std::map<int, EpsSeries>>> lin(
        n, std::vector<std::map<int, EpsSeries>>(n));
    for (int a = 0; a < n; ++a) {
        for (auto id : [&] {
                 std::set<std::int32_t> jets;
                 for (const auto& [k, p] : map.comp[a].coefficients()) {
                     (void)k;
                     auto o = p.occurring_jets();
                     jets.insert(o.begin(), o.end());
                 }
                 return jets;
             }()) {
            int gamma = Monomial::jet_comp(id);
            int k = Monomial::jet_order(id);
            EpsSeries part = map.comp[a].partial(gamma, k).truncated(E);
            if (!part.zero()) lin[a][gamma][k] = part;
        }
    }

    LocalPoissonBracket out(ctx, E);
    for (int alpha = 0; alpha < n; ++alpha) {
        for (int beta = 0; beta < n; ++beta) {
            std::vector<DeltaTerm> raw;
            for (int gamma = 0; gamma < n; ++gamma) {
                for (int rho = 0; rho < n; ++rho) {
                    for (const auto& [s, lam] : b.entry(gamma, rho)) {
                        for (std::size_t lp = 0; lp < lam.size(); ++lp) {
                            const EpsSeries& P = lam[lp];
                            if (P.zero()) continue;
                            for (const auto& [k, a_coef] : lin[alpha][gamma]) {
                                for (const auto& [l, b_coef] : lin[beta][rho]) {
                                    // d_x^k d_y^l [P(x) delta^(s)]
                                    // = sum_t C(k,t) P^(t)(x) (-1)^l delta^(s+l+k-t)
                                    EpsSeries pder = P.truncated(E);
                                    for (int t = 0; t <= k; ++t) {
                                        int m = s + l + k - t;
                                        mpz_class bkt = binomial(k, t);
                                        if (l % 2 == 1) bkt = -bkt;
                                        EpsSeries xc = a_coef;
                                        xc *= pder;
                                        xc *= Rat(bkt);
                                        // flip the pending y-factor b_coef
                                        EpsSeries yder = b_coef;
                                        for (int r = 0; r <= m; ++r) {
                                            EpsSeries term = xc;
                                            term *= yder;
                                            term *= Rat(binomial(m, r));
                                            if (!term.zero()) {
                                                DeltaTerm dt;
                                                dt.coef = term;
                                                dt.order = m - r;
                                                dt.lambda_pow = static_cast<int>(lp);
                                                raw.push_back(std::move(dt));
                                            }
                                            if (r < m) yder = yder.dx();
                                        }
                                        if (t < k) pder = pder.dx();
                                    }
                                }
                            }
                        }
                    }
                }
            }
            // re-express every coefficient in the new variables
            for (auto& t : raw) t.coef = substitute(t.coef, inverse, E);
            out.add_raw(alpha, beta, raw);
        }
    }
    return out;
}

LocalPoissonBracket transform_bracket(const LocalPoissonBracket& b, const JetMap& map, int E) {
    return transform_bracket(b, map, invert_near_identity(map, E), E);
}

}  // namespace tophier
