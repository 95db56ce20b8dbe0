#include "tophier/diff_poly.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace tophier {

// ---------------------------------------------------------------- Monomial

Monomial& Monomial::mul_var(std::int32_t id, std::int32_t e) {
    if (e == 0) return *this;
    auto it = std::lower_bound(f.begin(), f.end(), id,
                               [](const Factor& a, std::int32_t v) { return a.first < v; });
    if (it != f.end() && it->first == id) {
        it->second += e;
        if (it->second == 0) f.erase(it);
    } else {
        f.insert(it, {id, e});
    }
    return *this;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.f.reserve(a.f.size() + b.f.size());
    auto ia = a.f.begin(), ib = b.f.begin();
    while (ia != a.f.end() || ib != b.f.end()) {
        if (ib == b.f.end() || (ia != a.f.end() && ia->first < ib->first)) {
            r.f.push_back(*ia++);
        } else if (ia == a.f.end() || ib->first < ia->first) {
            r.f.push_back(*ib++);
        } else {
            std::int32_t e = ia->second + ib->second;
            if (e != 0) r.f.push_back({ia->first, e});
            ++ia;
            ++ib;
        }
    }
    return r;
}

std::optional<Monomial> Monomial::try_div(const Monomial& a, const Monomial& b) {
    Monomial r;
    auto ia = a.f.begin(), ib = b.f.begin();
    while (ia != a.f.end() || ib != b.f.end()) {
        if (ib == b.f.end() || (ia != a.f.end() && ia->first < ib->first)) {
            r.f.push_back(*ia++);
        } else if (ia == a.f.end() || ib->first < ia->first) {
            // factor only in divisor
            if (!is_exp(ib->first)) return std::nullopt;
            r.f.push_back({ib->first, -ib->second});
            ++ib;
        } else {
            std::int32_t e = ia->second - ib->second;
            if (e < 0 && !is_exp(ia->first)) return std::nullopt;
            if (e != 0) r.f.push_back({ia->first, e});
            ++ia;
            ++ib;
        }
    }
    return r;
}

int Monomial::cmp(const Monomial& a, const Monomial& b) {
    long long ga = a.jet_grade(), gb = b.jet_grade();
    if (ga != gb) return ga < gb ? -1 : 1;
    // classic lex: walk ids ascending, first differing exponent decides,
    // larger exponent = larger monomial
    auto ia = a.f.begin(), ib = b.f.begin();
    while (ia != a.f.end() || ib != b.f.end()) {
        std::int32_t va = ia != a.f.end() ? ia->first : INT32_MAX;
        std::int32_t vb = ib != b.f.end() ? ib->first : INT32_MAX;
        std::int32_t v = std::min(va, vb);
        std::int32_t ea = (va == v) ? ia->second : 0;
        std::int32_t eb = (vb == v) ? ib->second : 0;
        if (ea != eb) return ea < eb ? -1 : 1;
        if (va == v) ++ia;
        if (vb == v) ++ib;
    }
    return 0;
}

bool operator==(const PolyData& a, const PolyData& b) {
    auto strip = [](const std::vector<std::int32_t>& d) {
        auto e = d;
        while (!e.empty() && e.back() == 0) e.pop_back();
        return e;
    };
    if (strip(a.den) != strip(b.den)) return false;
    return a.num == b.num;
}

// ------------------------------------------------------------- local helpers

namespace {

using NumMap = std::map<Monomial, Rat, MonoLess>;

void strip_den(std::vector<std::int32_t>& d) {
    while (!d.empty() && d.back() == 0) d.pop_back();
}

int den_at(const std::vector<std::int32_t>& d, std::size_t i) {
    return i < d.size() ? d[i] : 0;
}

void den_bump(std::vector<std::int32_t>& d, std::size_t i, int by) {
    if (d.size() <= i) d.resize(i + 1, 0);
    d[i] += by;
}

NumMap map_mul(const NumMap& a, const NumMap& b) {
    NumMap r;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            Monomial m = ma * mb;
            Rat c = ca * cb;
            if (c.is_zero()) continue;
            auto [it, fresh] = r.emplace(std::move(m), c);
            if (!fresh) {
                it->second += c;
                if (it->second.is_zero()) r.erase(it);
            }
        }
    }
    return r;
}

void map_add_inplace(NumMap& a, const NumMap& b, const Rat& scale) {
    for (const auto& [m, c] : b) {
        Rat v = c * scale;
        if (v.is_zero()) continue;
        auto [it, fresh] = a.emplace(m, v);
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) a.erase(it);
        }
    }
}

NumMap map_pow(const NumMap& base, int e) {
    NumMap r;
    r.emplace(Monomial{}, Rat(1));
    for (int i = 0; i < e; ++i) r = map_mul(r, base);
    return r;
}

/// Exact division in the polynomial ring over jets/log vars and Laurent exp
/// vars: shift exp exponents to be nonnegative, divide by leading terms,
/// shift back.
std::optional<NumMap> map_try_div(const NumMap& a, const NumMap& b) {
    if (b.empty()) return std::nullopt;
    if (a.empty()) return NumMap{};

    // shift each operand separately so its exp exponents are nonnegative;
    // the quotient gets the difference of the shifts back at the end
    auto min_shift = [](const NumMap& m) {
        std::map<std::int32_t, std::int32_t> shift;  // exp var -> -min exponent
        for (const auto& [mono, c] : m) {
            (void)c;
            for (const auto& [id, e] : mono.f)
                if (Monomial::is_exp(id)) {
                    auto& s = shift[id];
                    s = std::max(s, -e);
                }
        }
        Monomial sm;
        for (const auto& [id, s] : shift)
            if (s > 0) sm.mul_var(id, s);
        return sm;
    };
    Monomial shift_a = min_shift(a);
    Monomial shift_b = min_shift(b);

    auto shifted = [](const NumMap& m, const Monomial& sm) {
        if (sm.empty()) return m;
        NumMap r;
        for (const auto& [mono, c] : m) r.emplace(mono * sm, c);
        return r;
    };
    NumMap ra = shifted(a, shift_a);
    NumMap rb = shifted(b, shift_b);

    // strict monomial division: every exponent of the quotient nonnegative
    auto strict_div = [](const Monomial& x, const Monomial& y) -> std::optional<Monomial> {
        Monomial q;
        auto ix = x.f.begin(), iy = y.f.begin();
        while (ix != x.f.end() || iy != y.f.end()) {
            if (iy == y.f.end() || (ix != x.f.end() && ix->first < iy->first)) {
                q.f.push_back(*ix++);
            } else if (ix == x.f.end() || iy->first < ix->first) {
                return std::nullopt;
            } else {
                std::int32_t e = ix->second - iy->second;
                if (e < 0) return std::nullopt;
                if (e != 0) q.f.push_back({ix->first, e});
                ++ix;
                ++iy;
            }
        }
        return q;
    };

    NumMap quot;
    const auto& ltb = *rb.rbegin();
    while (!ra.empty()) {
        const auto& ltr = *ra.rbegin();
        auto qm = strict_div(ltr.first, ltb.first);
        if (!qm) return std::nullopt;
        Rat qc = ltr.second / ltb.second;
        quot.emplace(*qm, qc);
        NumMap sub;
        for (const auto& [m, c] : rb) sub.emplace(m * *qm, c);
        map_add_inplace(ra, sub, -qc);
    }

    // a sa = (b sb) h'  =>  h = h' * sb / sa
    Monomial fix;
    for (const auto& [id, e] : shift_b.f) fix.mul_var(id, e);
    for (const auto& [id, e] : shift_a.f) fix.mul_var(id, -e);
    if (!fix.empty()) {
        NumMap adjusted;
        for (const auto& [m, c] : quot) adjusted.emplace(m * fix, c);
        quot = std::move(adjusted);
    }
    return quot;
}

}  // namespace

// ---------------------------------------------------------------- DiffPoly

DiffPoly::DiffPoly(JetContextPtr ctx, PolyData data) : ctx_(std::move(ctx)), d_(std::move(data)) {
    strip_den(d_.den);
    reduce();
}

DiffPoly DiffPoly::constant(JetContextPtr ctx, const Rat& c) {
    DiffPoly p(std::move(ctx));
    p.d_.add_term(Monomial{}, c);
    return p;
}

DiffPoly DiffPoly::jet(JetContextPtr ctx, int comp, int order) {
    if (comp < 0 || comp >= ctx->ncomp() || order < 0)
        raise(ErrorKind::Precondition, "jet variable out of range");
    DiffPoly p(std::move(ctx));
    Monomial m;
    m.mul_var(Monomial::jet_id(comp, order), 1);
    p.d_.add_term(m, Rat(1));
    return p;
}

DiffPoly DiffPoly::exp_atom(JetContextPtr ctx, int index, int power) {
    if (index < 0 || index >= ctx->n_exp_atoms())
        raise(ErrorKind::Precondition, "exp atom index out of range");
    DiffPoly p(std::move(ctx));
    Monomial m;
    m.mul_var(Monomial::exp_id(index), power);
    p.d_.add_term(m, Rat(1));
    return p;
}

DiffPoly DiffPoly::log_atom(JetContextPtr ctx, int den_index) {
    if (den_index < 0 || den_index >= ctx->n_den_atoms() || !ctx->den_atom(den_index).has_log)
        raise(ErrorKind::Precondition, "log atom not declared");
    DiffPoly p(std::move(ctx));
    Monomial m;
    m.mul_var(Monomial::log_id(den_index), 1);
    p.d_.add_term(m, Rat(1));
    return p;
}

DiffPoly DiffPoly::inv_atom(JetContextPtr ctx, int den_index, int power) {
    if (den_index < 0 || den_index >= ctx->n_den_atoms() || power < 0)
        raise(ErrorKind::Precondition, "inv atom out of range");
    DiffPoly p(std::move(ctx));
    p.d_.add_term(Monomial{}, Rat(1));
    den_bump(p.d_.den, den_index, power);
    return p;
}

DiffPoly DiffPoly::den_atom(JetContextPtr ctx, int den_index) {
    if (den_index < 0 || den_index >= ctx->n_den_atoms())
        raise(ErrorKind::Precondition, "den atom index out of range");
    PolyData d;
    d.num = ctx->den_atom(den_index).poly.num;
    return DiffPoly(std::move(ctx), std::move(d));
}

bool DiffPoly::is_constant() const {
    if (is_zero()) return true;
    return d_.den_trivial() && d_.num.size() == 1 && d_.num.begin()->first.empty();
}

Rat DiffPoly::constant_term() const {
    if (!d_.den_trivial()) return Rat(0);
    auto it = d_.num.find(Monomial{});
    return it == d_.num.end() ? Rat(0) : it->second;
}

bool DiffPoly::is_jet_polynomial() const {
    if (!d_.den_trivial()) return false;
    for (const auto& [m, c] : d_.num) {
        (void)c;
        for (const auto& [id, e] : m.f) {
            if (Monomial::is_log(id)) return false;
            if (Monomial::is_exp(id) && e < 0) return false;
        }
    }
    return true;
}

bool DiffPoly::has_log_atoms() const {
    for (const auto& [m, c] : d_.num) {
        (void)c;
        for (const auto& [id, e] : m.f) {
            (void)e;
            if (Monomial::is_log(id)) return true;
        }
    }
    return false;
}

int DiffPoly::max_jet_order() const {
    int mx = -1;
    for (auto id : occurring_jets()) mx = std::max(mx, Monomial::jet_order(id));
    return mx;
}

std::set<std::int32_t> DiffPoly::occurring_jets() const {
    std::set<std::int32_t> out;
    for (const auto& [m, c] : d_.num) {
        (void)c;
        for (const auto& [id, e] : m.f) {
            (void)e;
            if (Monomial::is_jet(id)) {
                out.insert(id);
            } else if (Monomial::is_exp(id)) {
                const auto& cl = ctx_->exp_atom(id - Monomial::kExpBase).jet_closure;
                out.insert(cl.begin(), cl.end());
            } else {
                const auto& cl = ctx_->den_atom(id - Monomial::kLogBase).jet_closure;
                out.insert(cl.begin(), cl.end());
            }
        }
    }
    for (std::size_t i = 0; i < d_.den.size(); ++i) {
        if (d_.den[i] != 0) {
            const auto& cl = ctx_->den_atom(i).jet_closure;
            out.insert(cl.begin(), cl.end());
        }
    }
    return out;
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly r = *this;
    for (auto& [m, c] : r.d_.num) {
        (void)m;
        c = -c;
    }
    return r;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    if (!ctx_) {
        *this = o;
        return *this;
    }
    if (o.is_zero()) return *this;
    if (is_zero()) {
        d_ = o.d_;
        return *this;
    }
    std::size_t n = std::max(d_.den.size(), o.d_.den.size());
    std::vector<std::int32_t> lcm(n, 0);
    for (std::size_t i = 0; i < n; ++i) lcm[i] = std::max(den_at(d_.den, i), den_at(o.d_.den, i));

    auto scale_num = [&](const PolyData& p) {
        NumMap r = p.num;
        for (std::size_t i = 0; i < n; ++i) {
            int extra = lcm[i] - den_at(p.den, i);
            if (extra > 0) r = map_mul(r, map_pow(ctx_->den_atom(i).poly.num, extra));
        }
        return r;
    };
    NumMap a = scale_num(d_);
    map_add_inplace(a, scale_num(o.d_), Rat(1));
    d_.num = std::move(a);
    d_.den = std::move(lcm);
    strip_den(d_.den);
    reduce();
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) { return *this += -o; }

DiffPoly& DiffPoly::operator*=(const DiffPoly& o) {
    if (!ctx_) {
        ctx_ = o.ctx_;
        return *this;  // zero
    }
    if (is_zero()) return *this;
    if (o.is_zero()) {
        d_ = PolyData{};
        return *this;
    }
    d_.num = map_mul(d_.num, o.d_.num);
    std::size_t n = std::max(d_.den.size(), o.d_.den.size());
    d_.den.resize(n, 0);
    for (std::size_t i = 0; i < o.d_.den.size(); ++i) d_.den[i] += o.d_.den[i];
    strip_den(d_.den);
    reduce();
    return *this;
}

DiffPoly& DiffPoly::operator*=(const Rat& c) {
    if (c.is_zero()) {
        d_ = PolyData{};
        return *this;
    }
    for (auto& [m, v] : d_.num) {
        (void)m;
        v *= c;
    }
    return *this;
}

DiffPoly DiffPoly::pow(int e) const {
    if (e == 0) return constant(ctx_, Rat(1));
    if (e < 0) {
        if (d_.num.size() != 1 || !d_.den_trivial())
            raise(ErrorKind::Precondition, "DiffPoly::pow: negative power of non-unit");
        const auto& [m, c] = *d_.num.begin();
        for (const auto& [id, ex] : m.f) {
            (void)ex;
            if (!Monomial::is_exp(id))
                raise(ErrorKind::Precondition, "DiffPoly::pow: negative power of non-unit");
        }
        DiffPoly r(ctx_);
        Monomial im;
        for (const auto& [id, ex] : m.f) im.mul_var(id, ex * e);
        r.d_.add_term(im, c.pow(e));
        return r;
    }
    DiffPoly r = constant(ctx_, Rat(1));
    DiffPoly base = *this;
    int k = e;
    while (k > 0) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

bool operator==(const DiffPoly& a, const DiffPoly& b) {
    if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_ && !a.ctx_->compatible_with(*b.ctx_))
        return false;
    return a.d_ == b.d_;
}

void DiffPoly::reduce() {
    for (std::size_t i = 0; i < d_.den.size(); ++i) {
        while (d_.den[i] > 0) {
            auto q = map_try_div(d_.num, ctx_->den_atom(i).poly.num);
            if (!q) break;
            d_.num = std::move(*q);
            --d_.den[i];
        }
    }
    strip_den(d_.den);
}

// derivative with base rule: jet id -> DiffPoly (chain rule through atoms)
static DiffPoly derive_impl(const DiffPoly& p,
                            const std::function<DiffPoly(std::int32_t)>& jet_rule);

namespace {

DiffPoly atom_derivative(const JetContextPtr& ctx, std::int32_t id,
                         const std::function<DiffPoly(std::int32_t)>& jet_rule) {
    if (Monomial::is_jet(id)) return jet_rule(id);
    if (Monomial::is_exp(id)) {
        const auto& atom = ctx->exp_atom(id - Monomial::kExpBase);
        PolyData arg;
        arg.num = atom.arg.num;
        DiffPoly d_arg = derive_impl(DiffPoly(ctx, std::move(arg)), jet_rule);
        return DiffPoly::exp_atom(ctx, id - Monomial::kExpBase) * d_arg;
    }
    // log atom: d log D = dD / D
    int i = id - Monomial::kLogBase;
    PolyData den_poly;
    den_poly.num = ctx->den_atom(i).poly.num;
    DiffPoly dD = derive_impl(DiffPoly(ctx, std::move(den_poly)), jet_rule);
    return dD * DiffPoly::inv_atom(ctx, i);
}

}  // namespace

static DiffPoly derive_impl(const DiffPoly& p,
                            const std::function<DiffPoly(std::int32_t)>& jet_rule) {
    const auto& ctx = p.ctx();
    DiffPoly result(ctx);
    // numerator part, term by term, factor by factor
    for (const auto& [m, c] : p.data().num) {
        for (std::size_t fi = 0; fi < m.f.size(); ++fi) {
            auto [id, e] = m.f[fi];
            Monomial rest = m;
            rest.mul_var(id, -1);
            DiffPoly dvar = atom_derivative(ctx, id, jet_rule);
            if (dvar.is_zero()) continue;
            PolyData base;
            base.num.emplace(rest, c * Rat(e));
            base.den = p.data().den;
            result += DiffPoly(ctx, std::move(base)) * dvar;
        }
    }
    // denominator part: d(A^-m) = -m dA * A^(-m-1)
    for (std::size_t i = 0; i < p.data().den.size(); ++i) {
        int mi = p.data().den[i];
        if (mi == 0) continue;
        PolyData den_poly;
        den_poly.num = ctx->den_atom(i).poly.num;
        DiffPoly dA = derive_impl(DiffPoly(ctx, std::move(den_poly)), jet_rule);
        if (dA.is_zero()) continue;
        PolyData base;
        base.num = p.data().num;
        base.den = p.data().den;
        den_bump(base.den, i, 1);
        result += DiffPoly(ctx, std::move(base)) * dA * Rat(-mi);
    }
    return result;
}

DiffPoly DiffPoly::dx() const {
    if (!ctx_) return *this;
    auto ctx = ctx_;
    return derive_impl(*this, [ctx](std::int32_t id) {
        return DiffPoly::jet(ctx, Monomial::jet_comp(id), Monomial::jet_order(id) + 1);
    });
}

DiffPoly DiffPoly::dx(int times) const {
    DiffPoly r = *this;
    for (int i = 0; i < times; ++i) r = r.dx();
    return r;
}

DiffPoly DiffPoly::partial(int comp, int order) const {
    if (!ctx_) return *this;
    auto ctx = ctx_;
    std::int32_t target = Monomial::jet_id(comp, order);
    return derive_impl(*this, [ctx, target](std::int32_t id) {
        return id == target ? DiffPoly::constant(ctx, Rat(1)) : DiffPoly::zero(ctx);
    });
}

DiffPoly DiffPoly::var_derivative(int comp) const {
    if (has_log_atoms())
        raise(ErrorKind::UnsupportedDensity,
              "var_derivative: density carries a log atom");
    DiffPoly r(ctx_);
    int kmax = -1;
    for (auto id : occurring_jets())
        if (Monomial::jet_comp(id) == comp) kmax = std::max(kmax, Monomial::jet_order(id));
    for (int k = 0; k <= kmax; ++k) {
        DiffPoly term = partial(comp, k).dx(k);
        if (k % 2 == 1) term = -term;
        r += term;
    }
    return r;
}

DiffPoly::GradeReport DiffPoly::grade() const {
    GradeReport rep;
    long long den_grade = 0;
    for (std::size_t i = 0; i < d_.den.size(); ++i)
        den_grade += static_cast<long long>(d_.den[i]) * ctx_->den_atom(i).grade;
    bool first = true;
    for (const auto& [m, c] : d_.num) {
        (void)c;
        long long g = m.jet_grade() - den_grade;
        rep.grades_seen.insert(g);
        if (first) {
            rep.grade = g;
            first = false;
        } else if (g != rep.grade) {
            rep.homogeneous = false;
        }
    }
    return rep;
}

std::optional<DiffPoly> DiffPoly::try_divide_exact(const DiffPoly& a, const DiffPoly& b) {
    if (!a.d_.den_trivial() || !b.d_.den_trivial())
        raise(ErrorKind::Precondition, "try_divide_exact: operands must be polynomial");
    auto q = map_try_div(a.d_.num, b.d_.num);
    if (!q) return std::nullopt;
    PolyData d;
    d.num = std::move(*q);
    return DiffPoly(a.ctx_ ? a.ctx_ : b.ctx_, std::move(d));
}

std::optional<DiffPoly> DiffPoly::divide_with_atoms(const DiffPoly& a, const DiffPoly& b,
                                                    int max_extra) {
    if (b.is_zero()) return std::nullopt;
    const auto& ctx = b.ctx();
    // separate b into coefficient * exp-monomial unit * remaining polynomial
    // by dividing out the unit content of its leading term
    Monomial unit;
    for (const auto& [id, e] : b.d_.num.rbegin()->first.f)
        if (Monomial::is_exp(id)) unit.mul_var(id, e);
    // all terms of b must carry at least that exp content for a clean split;
    // otherwise just proceed with b as-is (unit stays empty)
    DiffPoly bb = b;
    if (!unit.empty()) {
        NumMap stripped;
        bool ok = true;
        for (const auto& [m, c] : b.d_.num) {
            auto q = Monomial::try_div(m, unit);
            if (!q) {
                ok = false;
                break;
            }
            stripped.emplace(*q, c);
        }
        if (ok) {
            PolyData d;
            d.num = std::move(stripped);
            d.den = b.d_.den;
            bb = DiffPoly(ctx, std::move(d));
        } else {
            unit = Monomial{};
        }
    }

    // a / b = a * unit^-1 * b.den-powers / bb_num, with a's own denominator
    // powers set aside and re-applied at the end
    std::vector<std::int32_t> a_den = a.d_.den;
    DiffPoly num(ctx);
    {
        PolyData stripped;
        stripped.num = a.d_.num;
        num = DiffPoly(ctx, std::move(stripped));
    }
    if (!unit.empty()) {
        PolyData inv_unit;
        Monomial im;
        for (const auto& [id, e] : unit.f) im.mul_var(id, -e);
        inv_unit.num.emplace(im, Rat(1));
        num *= DiffPoly(ctx, std::move(inv_unit));
    }
    for (std::size_t i = 0; i < bb.d_.den.size(); ++i)
        if (bb.d_.den[i] > 0) {
            PolyData ap;
            ap.num = map_pow(ctx->den_atom(i).poly.num, bb.d_.den[i]);
            num *= DiffPoly(ctx, std::move(ap));
        }

    PolyData divisor;
    divisor.num = bb.d_.num;

    for (int extra = 0; extra <= max_extra; ++extra) {
        // try den-atom multipliers of total extra power
        std::function<std::optional<DiffPoly>(std::size_t, int, DiffPoly)> rec =
            [&](std::size_t atom, int left, DiffPoly cur) -> std::optional<DiffPoly> {
            if (left == 0 || atom == static_cast<std::size_t>(ctx->n_den_atoms())) {
                if (left != 0) return std::nullopt;
                if (!cur.d_.den_trivial()) {
                    // clear cur's own denominators before the division attempt
                    return std::nullopt;
                }
                auto q = map_try_div(cur.d_.num, divisor.num);
                if (!q) return std::nullopt;
                PolyData r;
                r.num = std::move(*q);
                return DiffPoly(ctx, std::move(r));
            }
            for (int use = 0; use <= left; ++use) {
                DiffPoly trial = cur;
                if (use > 0) {
                    PolyData ap;
                    ap.num = map_pow(ctx->den_atom(atom).poly.num, use);
                    trial *= DiffPoly(ctx, std::move(ap));
                }
                auto r = rec(atom + 1, left - use, trial);
                if (r) {
                    // divide the result by the atom powers we multiplied in
                    DiffPoly out = *r;
                    if (use > 0) out *= DiffPoly::inv_atom(ctx, static_cast<int>(atom), use);
                    return out;
                }
            }
            return std::nullopt;
        };
        auto r = rec(0, extra, num);
        if (r) {
            DiffPoly out = *r;
            for (std::size_t i = 0; i < a_den.size(); ++i)
                if (a_den[i] > 0) out *= DiffPoly::inv_atom(ctx, static_cast<int>(i), a_den[i]);
            return out;
        }
    }
    return std::nullopt;
}

DiffPoly DiffPoly::rebased(JetContextPtr other) const {
    if (!ctx_) return DiffPoly(std::move(other));
    if (!ctx_->compatible_with(*other))
        raise(ErrorKind::Precondition, "rebased: incompatible contexts");
    return DiffPoly(std::move(other), d_);
}

DiffPoly DiffPoly::limit_exp_atom_zero(int exp_index) const {
    std::int32_t id = Monomial::exp_id(exp_index);
    for (std::size_t i = 0; i < d_.den.size(); ++i)
        if (d_.den[i] != 0 && ctx_->den_atom(i).poly.num.size() > 0) {
            for (const auto& [m, c] : ctx_->den_atom(i).poly.num) {
                (void)c;
                if (m.exponent(id) != 0)
                    raise(ErrorKind::Precondition,
                          "limit_exp_atom_zero: atom occurs in a carried denominator");
            }
        }
    DiffPoly r(ctx_);
    r.d_.den = d_.den;
    for (const auto& [m, c] : d_.num) {
        int e = m.exponent(id);
        if (e < 0)
            raise(ErrorKind::Precondition, "limit_exp_atom_zero: negative power present");
        if (e > 0) continue;
        r.d_.add_term(m, c);
    }
    strip_den(r.d_.den);
    return r;
}

}  // namespace tophier
