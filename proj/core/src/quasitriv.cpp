#include "tophier/quasitriv.hpp"

#include <map>

namespace tophier {

EpsSeries flow_derivative(const std::vector<EpsSeries>& rhs, const DiffPoly& p, int E) {
    const auto& ctx = p.ctx();
    if (static_cast<int>(rhs.size()) != ctx->ncomp())
        raise(ErrorKind::Precondition, "flow_derivative: wrong rhs count");
    // cache dx^k(rhs_alpha) as k grows
    std::map<std::pair<int, int>, EpsSeries> dcache;
    auto rhs_dx = [&](int alpha, int k) -> const EpsSeries& {
        for (int j = 0; j <= k; ++j) {
            auto key = std::make_pair(alpha, j);
            if (dcache.find(key) == dcache.end())
                dcache.emplace(key, j == 0 ? rhs[alpha].truncated(E)
                                           : dcache.at({alpha, j - 1}).dx());
        }
        return dcache.at({alpha, k});
    };

    EpsSeries acc(ctx, E);
    for (auto id : p.occurring_jets()) {
        int alpha = Monomial::jet_comp(id);
        int k = Monomial::jet_order(id);
        DiffPoly part = p.partial(alpha, k);
        if (part.is_zero()) continue;
        EpsSeries term = rhs_dx(alpha, k);
        term *= part;
        acc += term;
    }
    return acc;
}

EpsSeries flow_derivative(const std::vector<EpsSeries>& rhs, const EpsSeries& p, int E) {
    EpsSeries acc(p.ctx(), std::min(E, p.trunc()));
    for (const auto& [k, c] : p.coefficients()) {
        if (k > E) continue;
        acc += flow_derivative(rhs, c, E - k).shifted(k);
    }
    return acc;
}

JetMap kdv_substitution(const EpsSeries& delta_f, int E) {
    const auto& ctx = delta_f.ctx();
    if (ctx->ncomp() != 1)
        raise(ErrorKind::Precondition, "kdv_substitution: one-field algebra expected");
    JetMap map = JetMap::identity(ctx, E);
    map.comp[0] += delta_f.truncated(E - 2).dx(2).shifted(2);
    return map;
}

std::vector<EpsSeries> transform_flow(const std::vector<DiffPoly>& flow, const JetMap& map,
                                      const JetMap& inverse, int E) {
    const auto& ctx = map.ctx;
    if (static_cast<int>(flow.size()) != ctx->ncomp())
        raise(ErrorKind::Precondition, "transform_flow: wrong flow component count");
    std::vector<EpsSeries> flow_series;
    flow_series.reserve(flow.size());
    for (const auto& f : flow) flow_series.push_back(EpsSeries::lift(f, E));

    std::vector<EpsSeries> out;
    for (int a = 0; a < ctx->ncomp(); ++a) {
        EpsSeries ut = flow_derivative(flow_series, map.comp[a], E);
        out.push_back(substitute(ut, inverse, E));
    }
    return out;
}

std::vector<EpsSeries> transform_flow(const std::vector<DiffPoly>& flow, const JetMap& map,
                                      int E) {
    return transform_flow(flow, map, invert_near_identity(map, E), E);
}

EpsSeries transform_flow_kdv(const DiffPoly& flow, const EpsSeries& delta_f, int E) {
    JetMap map = kdv_substitution(delta_f, E);
    return transform_flow({flow}, map, E)[0];
}

EpsSeries tau_density(int i, int E, const EpsSeries& delta_f) {
    if (i < -1) raise(ErrorKind::Precondition, "tau_density: i >= -1");
    const auto& ctx = delta_f.ctx();
    if (ctx->ncomp() != 1)
        raise(ErrorKind::Precondition, "tau_density: one-field algebra expected");
    auto v = DiffPoly::jet(ctx, 0, 0);

    DiffPoly density = v.pow(i + 2) * rat_factorial_inv(i + 2);
    DiffPoly next_flow = v.pow(i + 1) * rat_factorial_inv(i + 1) * DiffPoly::jet(ctx, 0, 1);

    EpsSeries h = EpsSeries::lift(density, E);
    EpsSeries dt = flow_derivative({EpsSeries::lift(next_flow, E)}, delta_f.truncated(E - 2), E - 2);
    h += dt.dx().shifted(2);

    JetMap inverse = invert_near_identity(kdv_substitution(delta_f, E), E);
    EpsSeries out = substitute(h, inverse, E);

    for (const auto& [k, p] : out.coefficients())
        if (!p.is_jet_polynomial())
            raise(ErrorKind::PolynomialityFailure,
                  "tau_density: non-polynomial coefficient at eps^" + std::to_string(k) +
                      ": " + p.str());
    return out;
}

bool equal_mod_dx(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly d = a - b;
    if (d.is_zero()) return true;
    if (!d.constant_term().is_zero()) return false;
    for (int comp = 0; comp < d.ctx()->ncomp(); ++comp)
        if (!d.var_derivative(comp).is_zero()) return false;
    return true;
}

bool equal_mod_dx(const EpsSeries& a, const EpsSeries& b, int E) {
    int lim = std::min({E, a.trunc(), b.trunc()});
    for (int k = 0; k <= lim; k += 2)
        if (!equal_mod_dx(a.at(k), b.at(k))) return false;
    return true;
}

}  // namespace tophier
