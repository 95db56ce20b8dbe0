#include "tophier/substitute.hpp"

#include <map>

namespace tophier {

JetMap JetMap::identity(JetContextPtr ctx, int trunc) {
    JetMap m;
    m.ctx = ctx;
    m.trunc = trunc;
    for (int a = 0; a < ctx->ncomp(); ++a)
        m.comp.push_back(EpsSeries::lift(DiffPoly::jet(ctx, a, 0), trunc));
    return m;
}

void JetMap::validate_near_identity() const {
    if (static_cast<int>(comp.size()) != ctx->ncomp())
        raise(ErrorKind::Precondition, "JetMap: wrong component count");
    for (int a = 0; a < ctx->ncomp(); ++a)
        if (comp[a].at(0) != DiffPoly::jet(ctx, a, 0))
            raise(ErrorKind::Precondition, "JetMap: eps^0 part is not the identity");
}

namespace {

class Substituter {
public:
    Substituter(const JetMap& map, int E) : map_(map), E_(E) {
        if (E > map.trunc)
            raise(ErrorKind::Precondition, "substitute: requested order beyond map truncation");
        map.validate_near_identity();
    }

    EpsSeries poly(const PolyData& d) {
        const auto& ctx = map_.ctx;
        EpsSeries acc(ctx, E_);
        for (const auto& [m, c] : d.num) {
            EpsSeries term = EpsSeries::lift(DiffPoly::constant(ctx, c), E_);
            for (const auto& [id, e] : m.f) term *= var_power(id, e);
            acc += term;
        }
        for (std::size_t i = 0; i < d.den.size(); ++i)
            if (d.den[i] > 0) acc *= den_inverse_power(static_cast<int>(i), d.den[i]);
        return acc;
    }

private:
    EpsSeries var_power(std::int32_t id, int e) {
        if (Monomial::is_jet(id)) {
            EpsSeries base = jet_image(id);
            EpsSeries r = base;
            for (int i = 1; i < e; ++i) r *= base;
            if (e < 0) raise(ErrorKind::Precondition, "substitute: negative jet power");
            return r;
        }
        if (Monomial::is_exp(id)) return exp_image_power(id - Monomial::kExpBase, e);
        if (e < 0) raise(ErrorKind::Precondition, "substitute: negative log power");
        EpsSeries base = log_image(id - Monomial::kLogBase);
        EpsSeries r = base;
        for (int i = 1; i < e; ++i) r *= base;
        return r;
    }

    EpsSeries jet_image(std::int32_t id) {
        auto it = jet_cache_.find(id);
        if (it != jet_cache_.end()) return it->second;
        int comp = Monomial::jet_comp(id);
        int k = Monomial::jet_order(id);
        EpsSeries img;
        if (k == 0)
            img = map_.comp[comp].truncated(E_);
        else
            img = jet_image(Monomial::jet_id(comp, k - 1)).dx();
        jet_cache_.emplace(id, img);
        return img;
    }

    /// Series T with eps^0 = 0 such that image(atom) = atom * (1 + T).
    EpsSeries den_rel_correction(int i) {
        auto it = den_t_cache_.find(i);
        if (it != den_t_cache_.end()) return it->second;
        const auto& ctx = map_.ctx;
        PolyData atom_poly;
        atom_poly.num = ctx->den_atom(i).poly.num;
        EpsSeries img = poly(atom_poly);
        DiffPoly atom = DiffPoly::den_atom(ctx, i);
        if (img.at(0) != atom)
            raise(ErrorKind::InternalConsistency, "substitute: atom eps^0 image mismatch");
        if (atom.is_zero())
            raise(ErrorKind::SingularSubstitution,
                  "substitute: denominator atom maps to zero at eps^0");
        EpsSeries t = img;
        t -= EpsSeries::lift(atom, E_);
        t *= DiffPoly::inv_atom(ctx, i);
        den_t_cache_.emplace(i, t);
        return t;
    }

    EpsSeries den_inverse_power(int i, int m) {
        // 1/(A(1+T))^m = A^-m * sum_j C(m-1+j, j) (-T)^j
        const auto& ctx = map_.ctx;
        EpsSeries t = den_rel_correction(i);
        EpsSeries acc = EpsSeries::lift(DiffPoly::constant(ctx, Rat(1)), E_);
        EpsSeries tp = acc;
        for (int j = 1; 2 * j <= E_; ++j) {
            tp *= t;
            tp *= Rat(-1);
            EpsSeries term = tp;
            term *= Rat(binomial(m - 1 + j, j));
            acc += term;
        }
        acc *= DiffPoly::inv_atom(ctx, i, m);
        return acc;
    }

    EpsSeries log_image(int i) {
        auto it = log_cache_.find(i);
        if (it != log_cache_.end()) return it->second;
        const auto& ctx = map_.ctx;
        EpsSeries t = den_rel_correction(i);
        EpsSeries acc = EpsSeries::lift(DiffPoly::log_atom(ctx, i), E_);
        EpsSeries tp = EpsSeries::lift(DiffPoly::constant(ctx, Rat(1)), E_);
        for (int j = 1; 2 * j <= E_; ++j) {
            tp *= t;
            EpsSeries term = tp;
            term *= Rat((j % 2 == 1) ? 1 : -1, j);
            acc += term;
        }
        log_cache_.emplace(i, acc);
        return acc;
    }

    EpsSeries exp_image_power(int i, int e) {
        // image(q^e) = q^e * exp(e * W), W = image(arg) - arg
        const auto& ctx = map_.ctx;
        EpsSeries w = exp_arg_correction(i);
        EpsSeries acc = EpsSeries::lift(DiffPoly::exp_atom(ctx, i, e), E_);
        EpsSeries sum(ctx, E_);
        sum += EpsSeries::lift(DiffPoly::constant(ctx, Rat(1)), E_);
        EpsSeries wp = EpsSeries::lift(DiffPoly::constant(ctx, Rat(1)), E_);
        for (int j = 1; 2 * j <= E_; ++j) {
            wp *= w;
            wp *= Rat(e, j);
            sum += wp;
        }
        acc *= sum;
        return acc;
    }

    EpsSeries exp_arg_correction(int i) {
        auto it = exp_w_cache_.find(i);
        if (it != exp_w_cache_.end()) return it->second;
        const auto& ctx = map_.ctx;
        PolyData arg;
        arg.num = ctx->exp_atom(i).arg.num;
        EpsSeries w = poly(arg);
        w -= EpsSeries::lift(DiffPoly(ctx, std::move(arg)), E_);
        exp_w_cache_.emplace(i, w);
        return w;
    }

    const JetMap& map_;
    int E_;
    std::map<std::int32_t, EpsSeries> jet_cache_;
    std::map<int, EpsSeries> den_t_cache_;
    std::map<int, EpsSeries> log_cache_;
    std::map<int, EpsSeries> exp_w_cache_;
};

}  // namespace

EpsSeries substitute(const DiffPoly& expr, const JetMap& map, int E) {
    Substituter sub(map, E);
    return sub.poly(expr.data());
}

EpsSeries substitute(const EpsSeries& expr, const JetMap& map, int E) {
    EpsSeries acc(map.ctx, std::min(E, expr.trunc()));
    for (const auto& [k, p] : expr.coefficients()) {
        if (k > E) continue;
        Substituter sub(map, E - k);
        acc += sub.poly(p.data()).shifted(k);
    }
    return acc;
}

JetMap invert_near_identity(const JetMap& map, int E) {
    const auto& ctx = map.ctx;
    map.validate_near_identity();
    // v = u - (U(v) - v) evaluated at v = V(u), iterated
    std::vector<EpsSeries> corr;  // U - id, an O(eps^2) series
    for (int a = 0; a < ctx->ncomp(); ++a) {
        EpsSeries c = map.comp[a].truncated(E);
        c -= EpsSeries::lift(DiffPoly::jet(ctx, a, 0), E);
        corr.push_back(c);
    }
    JetMap inv = JetMap::identity(ctx, E);
    for (int it = 0; 2 * it <= E; ++it) {
        JetMap next = JetMap::identity(ctx, E);
        for (int a = 0; a < ctx->ncomp(); ++a) next.comp[a] -= substitute(corr[a], inv, E);
        inv = std::move(next);
    }
    return inv;
}

}  // namespace tophier
