#include "tophier/lambda_ext.hpp"

#include <sstream>

namespace tophier {

LambdaExtPoly LambdaExtPoly::s_power(JetContextPtr ctx, int spow, const Rat& c) {
    LambdaExtPoly p(std::move(ctx));
    p.add(spow, DiffPoly::constant(p.ctx_, c));
    return p;
}

LambdaExtPoly LambdaExtPoly::lift(const DiffPoly& p) {
    LambdaExtPoly r(p.ctx());
    r.add(0, p);
    return r;
}

void LambdaExtPoly::add(int spow, const DiffPoly& p) {
    if (p.is_zero()) return;
    auto [it, fresh] = c_.emplace(spow, p);
    if (!fresh) {
        it->second += p;
        if (it->second.is_zero()) c_.erase(it);
    }
}

DiffPoly LambdaExtPoly::coeff_s(int spow) const {
    auto it = c_.find(spow);
    return it == c_.end() ? DiffPoly::zero(ctx_) : it->second;
}

bool LambdaExtPoly::pure_w() const {
    for (const auto& [s, p] : c_) {
        (void)p;
        if (s % 2 != 0) return false;
    }
    return true;
}

bool LambdaExtPoly::vanishes_at_infinity() const { return coeff_s(0).is_zero(); }

int LambdaExtPoly::max_w_power() const {
    int m = 0;
    for (const auto& [s, p] : c_) {
        (void)p;
        m = std::max(m, s / 2);
    }
    return m;
}

LambdaExtPoly LambdaExtPoly::operator-() const {
    LambdaExtPoly r(ctx_);
    for (const auto& [s, p] : c_) r.c_.emplace(s, -p);
    return r;
}

LambdaExtPoly& LambdaExtPoly::operator+=(const LambdaExtPoly& o) {
    for (const auto& [s, p] : o.c_) add(s, p);
    return *this;
}

LambdaExtPoly& LambdaExtPoly::operator-=(const LambdaExtPoly& o) {
    for (const auto& [s, p] : o.c_) add(s, -p);
    return *this;
}

LambdaExtPoly operator*(const LambdaExtPoly& a, const LambdaExtPoly& b) {
    LambdaExtPoly r(a.ctx_ ? a.ctx_ : b.ctx_);
    for (const auto& [sa, pa] : a.c_)
        for (const auto& [sb, pb] : b.c_) r.add(sa + sb, pa * pb);
    return r;
}

LambdaExtPoly& LambdaExtPoly::operator*=(const DiffPoly& p) {
    if (p.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto it = c_.begin(); it != c_.end();) {
        it->second *= p;
        if (it->second.is_zero())
            it = c_.erase(it);
        else
            ++it;
    }
    return *this;
}

LambdaExtPoly& LambdaExtPoly::operator*=(const Rat& r) {
    if (r.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& [s, p] : c_) {
        (void)s;
        p *= r;
    }
    return *this;
}

LambdaExtPoly LambdaExtPoly::dx() const {
    LambdaExtPoly r(ctx_);
    DiffPoly vx = DiffPoly::jet(ctx_, 0, 1);
    for (const auto& [s, p] : c_) {
        r.add(s, p.dx());
        if (s != 0) r.add(s + 2, Rat(-s, 2) * vx * p);
    }
    return r;
}

LambdaExtPoly LambdaExtPoly::dx(int times) const {
    LambdaExtPoly r = *this;
    for (int i = 0; i < times; ++i) r = r.dx();
    return r;
}

DiffPoly LambdaExtPoly::lambda_coefficient(int j) const {
    if (!pure_w())
        raise(ErrorKind::InternalConsistency, "lambda_coefficient: odd s-powers present");
    DiffPoly v = DiffPoly::jet(ctx_, 0, 0);
    DiffPoly out = DiffPoly::zero(ctx_);
    for (const auto& [s, coef] : c_) {
        int p = s / 2;
        if (p <= 0 || p > j) continue;  // w^0 contributes only at lambda^0
        mpz_class b = binomial(j - 1, p - 1);
        if (p % 2 == 1) b = -b;
        out += coef * v.pow(j - p) * Rat(b);
    }
    return out;
}

std::string LambdaExtPoly::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, p] : c_) {
        if (!first) os << "  +  ";
        first = false;
        if (s == 0)
            os << p.str();
        else if (s % 2 == 0)
            os << "w^" << s / 2 << "*(" << p.str() << ")";
        else
            os << "s^" << s << "*(" << p.str() << ")";
    }
    if (first) os << "0";
    return os.str();
}

LambdaExtPoly loop_A(JetContextPtr ctx, int k) {
    LambdaExtPoly w = LambdaExtPoly::s_power(ctx, 2);
    LambdaExtPoly s = LambdaExtPoly::s_power(ctx, 1);
    LambdaExtPoly out = w.dx(k);
    for (int j = 1; j <= k; ++j) {
        LambdaExtPoly prod = s.dx(j - 1) * s.dx(k - j + 1);
        prod *= Rat(binomial(k, j));
        out += prod;
    }
    return out;
}

LambdaExtPoly loop_B(JetContextPtr ctx, int k) {
    LambdaExtPoly w2 = LambdaExtPoly::s_power(ctx, 4);
    LambdaExtPoly out = w2.dx(k + 2);
    out *= Rat(-1, 16);
    return out;
}

LambdaExtPoly loop_C(JetContextPtr ctx, int k, int l) {
    LambdaExtPoly s = LambdaExtPoly::s_power(ctx, 1);
    return s.dx(k + 1) * s.dx(l + 1);
}

}  // namespace tophier
