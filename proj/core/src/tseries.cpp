#include "tophier/tseries.hpp"

#include <numeric>
#include <sstream>

namespace tophier {

namespace {

int key_degree(const TSeries::Key& k) {
    return std::accumulate(k.begin(), k.end(), 0);
}

}  // namespace

TSeries TSeries::variable(int nvars, int maxdeg, int i) {
    TSeries s(nvars, maxdeg);
    if (i < 0 || i >= nvars) raise(ErrorKind::Precondition, "TSeries: variable out of range");
    if (maxdeg >= 1) {
        Key k(nvars, 0);
        k[i] = 1;
        s.c_.emplace(std::move(k), Rat(1));
    }
    return s;
}

TSeries TSeries::constant(int nvars, int maxdeg, const Rat& c) {
    TSeries s(nvars, maxdeg);
    if (!c.is_zero()) s.c_.emplace(Key(nvars, 0), c);
    return s;
}

Rat TSeries::constant_term() const { return coefficient(Key(nvars_, 0)); }

Rat TSeries::coefficient(const Key& k) const {
    auto it = c_.find(k);
    return it == c_.end() ? Rat(0) : it->second;
}

Rat TSeries::coefficient_of(const std::vector<int>& vars) const {
    Key k(nvars_, 0);
    for (int v : vars) {
        if (v < 0 || v >= nvars_) return Rat(0);
        ++k[v];
    }
    return coefficient(k);
}

void TSeries::add_term(const Key& k, const Rat& c) {
    if (c.is_zero() || key_degree(k) > maxdeg_) return;
    auto [it, fresh] = c_.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

TSeries TSeries::operator-() const {
    TSeries r = *this;
    for (auto& [k, v] : r.c_) {
        (void)k;
        v = -v;
    }
    return r;
}

TSeries& TSeries::operator+=(const TSeries& o) {
    if (nvars_ == 0) {
        nvars_ = o.nvars_;
        maxdeg_ = o.maxdeg_;
    }
    maxdeg_ = std::min(maxdeg_, o.maxdeg_);
    for (const auto& [k, v] : o.c_) add_term(k, v);
    // drop now-overflowing terms after the min
    for (auto it = c_.begin(); it != c_.end();)
        it = key_degree(it->first) > maxdeg_ ? c_.erase(it) : std::next(it);
    return *this;
}

TSeries& TSeries::operator-=(const TSeries& o) { return *this += -o; }

TSeries operator*(const TSeries& a, const TSeries& b) {
    TSeries r(a.nvars_ ? a.nvars_ : b.nvars_, std::min(a.maxdeg_, b.maxdeg_));
    if (a.nvars_ && b.nvars_ && a.nvars_ != b.nvars_)
        raise(ErrorKind::Precondition, "TSeries: variable count mismatch");
    for (const auto& [ka, va] : a.c_) {
        int da = key_degree(ka);
        for (const auto& [kb, vb] : b.c_) {
            if (da + key_degree(kb) > r.maxdeg_) continue;
            TSeries::Key k(ka);
            for (std::size_t i = 0; i < k.size(); ++i) k[i] += kb[i];
            r.add_term(k, va * vb);
        }
    }
    return r;
}

TSeries& TSeries::operator*=(const Rat& r) {
    if (r.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& [k, v] : c_) {
        (void)k;
        v *= r;
    }
    return *this;
}

TSeries TSeries::derivative(int var) const {
    TSeries r(nvars_, maxdeg_);
    for (const auto& [k, v] : c_) {
        if (k[var] == 0) continue;
        Key d = k;
        --d[var];
        r.add_term(d, v * Rat(k[var]));
    }
    return r;
}

TSeries TSeries::pow(int e) const {
    if (e < 0) raise(ErrorKind::Precondition, "TSeries::pow: e >= 0");
    TSeries r = constant(nvars_, maxdeg_, Rat(1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

TSeries TSeries::inverse_unit() const {
    if (!(constant_term() == Rat(1)))
        raise(ErrorKind::Precondition, "TSeries::inverse_unit: constant term must be 1");
    TSeries x = *this;
    x -= constant(nvars_, maxdeg_, Rat(1));
    TSeries r = constant(nvars_, maxdeg_, Rat(1));
    TSeries p = constant(nvars_, maxdeg_, Rat(1));
    for (int j = 1; j <= maxdeg_; ++j) {
        p = p * x;
        if (p.is_zero()) break;
        TSeries t = p;
        t *= Rat(j % 2 == 0 ? 1 : -1);
        r += t;
    }
    return r;
}

TSeries TSeries::log_unit() const {
    if (!(constant_term() == Rat(1)))
        raise(ErrorKind::Precondition, "TSeries::log_unit: constant term must be 1");
    TSeries x = *this;
    x -= constant(nvars_, maxdeg_, Rat(1));
    TSeries r(nvars_, maxdeg_);
    TSeries p = constant(nvars_, maxdeg_, Rat(1));
    for (int j = 1; j <= maxdeg_; ++j) {
        p = p * x;
        if (p.is_zero()) break;
        TSeries t = p;
        t *= Rat(j % 2 == 1 ? 1 : -1, j);
        r += t;
    }
    return r;
}

TSeries TSeries::exp_nilpotent() const {
    if (!constant_term().is_zero())
        raise(ErrorKind::Precondition, "TSeries::exp_nilpotent: constant term must be 0");
    TSeries r = constant(nvars_, maxdeg_, Rat(1));
    TSeries p = constant(nvars_, maxdeg_, Rat(1));
    for (int j = 1; j <= maxdeg_; ++j) {
        p = p * *this;
        if (p.is_zero()) break;
        TSeries t = p;
        t *= Rat(mpz_class(1), factorial(j));
        r += t;
    }
    return r;
}

TSeries TSeries::truncated(int deg) const {
    TSeries r(nvars_, std::min(deg, maxdeg_));
    for (const auto& [k, v] : c_)
        if (key_degree(k) <= r.maxdeg_) r.c_.emplace(k, v);
    return r;
}

int TSeries::min_degree() const {
    int m = maxdeg_ + 1;
    for (const auto& [k, v] : c_) {
        (void)v;
        m = std::min(m, key_degree(k));
    }
    return m;
}

std::string TSeries::str(const std::function<std::string(int)>& var_name) const {
    if (c_.empty()) return "0";
    // group by total degree for readability, ascending
    std::multimap<int, std::string> parts;
    for (const auto& [k, v] : c_) {
        std::ostringstream os;
        os << v.str();
        for (int i = 0; i < nvars_; ++i) {
            if (k[i] == 0) continue;
            os << "*" << var_name(i);
            if (k[i] > 1) os << "^" << static_cast<int>(k[i]);
        }
        parts.emplace(key_degree(k), os.str());
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, s] : parts) {
        (void)d;
        if (!first) os << " + ";
        first = false;
        os << s;
    }
    return os.str();
}

TSeries eval_diffpoly(const DiffPoly& p,
                      const std::function<TSeries(int comp, int order)>& jet_value,
                      int nvars, int maxdeg) {
    const auto& ctx = p.ctx();
    std::map<std::int32_t, TSeries> jcache;
    auto jet_at = [&](std::int32_t id) {
        auto it = jcache.find(id);
        if (it == jcache.end())
            it = jcache
                     .emplace(id, jet_value(Monomial::jet_comp(id), Monomial::jet_order(id)))
                     .first;
        return it->second;
    };

    std::function<TSeries(const PolyData&)> eval_data = [&](const PolyData& d) {
        TSeries acc(nvars, maxdeg);
        for (const auto& [m, c] : d.num) {
            TSeries term = TSeries::constant(nvars, maxdeg, c);
            for (const auto& [id, e] : m.f) {
                if (Monomial::is_jet(id)) {
                    if (e < 0) raise(ErrorKind::Precondition, "eval: negative jet power");
                    term = term * jet_at(id).pow(e);
                } else if (Monomial::is_exp(id)) {
                    PolyData arg;
                    arg.num = ctx->exp_atom(id - Monomial::kExpBase).arg.num;
                    TSeries a = eval_data(arg);
                    TSeries q = a.exp_nilpotent();
                    if (e < 0) q = q.inverse_unit();
                    term = term * q.pow(e < 0 ? -e : e);
                } else {
                    PolyData den;
                    den.num = ctx->den_atom(id - Monomial::kLogBase).poly.num;
                    term = term * eval_data(den).log_unit().pow(e);
                }
            }
            acc += term;
        }
        for (std::size_t i = 0; i < d.den.size(); ++i) {
            if (d.den[i] == 0) continue;
            PolyData den;
            den.num = ctx->den_atom(i).poly.num;
            acc = acc * eval_data(den).inverse_unit().pow(d.den[i]);
        }
        return acc;
    };
    return eval_data(p.data());
}

}  // namespace tophier
