#include "tophier/eps_series.hpp"

#include <sstream>

namespace tophier {

void EpsSeries::set(int order, const DiffPoly& p) {
    if (order < 0 || order % 2 != 0)
        raise(ErrorKind::Precondition, "EpsSeries: orders are even and nonnegative");
    if (!ctx_) ctx_ = p.ctx();
    if (order > trunc_) return;
    if (p.is_zero())
        c_.erase(order);
    else
        c_[order] = p;
}

bool EpsSeries::is_zero_through(int order) const {
    for (const auto& [k, p] : c_) {
        (void)p;
        if (k <= order) return false;
    }
    return true;
}

EpsSeries EpsSeries::operator-() const {
    EpsSeries r = *this;
    for (auto& [k, p] : r.c_) {
        (void)k;
        p = -p;
    }
    return r;
}

EpsSeries& EpsSeries::operator+=(const EpsSeries& o) {
    if (!ctx_) ctx_ = o.ctx_;
    trunc_ = std::min(trunc_, o.trunc_);
    for (const auto& [k, p] : o.c_) {
        if (k > trunc_) continue;
        auto it = c_.find(k);
        if (it == c_.end()) {
            c_.emplace(k, p);
        } else {
            it->second += p;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    drop_beyond_trunc();
    return *this;
}

EpsSeries& EpsSeries::operator-=(const EpsSeries& o) { return *this += -o; }

EpsSeries& EpsSeries::operator*=(const EpsSeries& o) {
    if (!ctx_) ctx_ = o.ctx_;
    int t = std::min(trunc_, o.trunc_);
    std::map<int, DiffPoly> r;
    for (const auto& [ka, pa] : c_) {
        for (const auto& [kb, pb] : o.c_) {
            int k = ka + kb;
            if (k > t) continue;
            DiffPoly prod = pa * pb;
            if (prod.is_zero()) continue;
            auto it = r.find(k);
            if (it == r.end()) {
                r.emplace(k, std::move(prod));
            } else {
                it->second += prod;
                if (it->second.is_zero()) r.erase(it);
            }
        }
    }
    c_ = std::move(r);
    trunc_ = t;
    return *this;
}

EpsSeries& EpsSeries::operator*=(const DiffPoly& p) {
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

EpsSeries& EpsSeries::operator*=(const Rat& r) {
    if (r.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& [k, p] : c_) {
        (void)k;
        p *= r;
    }
    return *this;
}

EpsSeries EpsSeries::dx() const {
    EpsSeries r(ctx_, trunc_);
    for (const auto& [k, p] : c_) r.set(k, p.dx());
    return r;
}

EpsSeries EpsSeries::dx(int times) const {
    EpsSeries r = *this;
    for (int i = 0; i < times; ++i) r = r.dx();
    return r;
}

EpsSeries EpsSeries::partial(int comp, int order) const {
    EpsSeries r(ctx_, trunc_);
    for (const auto& [k, p] : c_) r.set(k, p.partial(comp, order));
    return r;
}

EpsSeries EpsSeries::shifted(int by) const {
    if (by < 0 || by % 2 != 0) raise(ErrorKind::Precondition, "EpsSeries::shifted: even by >= 0");
    EpsSeries r(ctx_, trunc_ >= kExact ? kExact : trunc_ + by);
    for (const auto& [k, p] : c_) r.set(k + by, p);
    return r;
}

EpsSeries EpsSeries::truncated(int E) const {
    EpsSeries r(ctx_, std::min(trunc_, E));
    for (const auto& [k, p] : c_)
        if (k <= E) r.set(k, p);
    return r;
}

bool EpsSeries::equal_through(const EpsSeries& a, const EpsSeries& b, int E) {
    int lim = std::min({E, a.trunc_, b.trunc_});
    for (int k = 0; k <= lim; k += 2)
        if (a.at(k) != b.at(k)) return false;
    return true;
}

void EpsSeries::drop_beyond_trunc() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->first > trunc_)
            it = c_.erase(it);
        else
            ++it;
    }
}

std::string EpsSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, p] : c_) {
        if (!first) os << "  +  ";
        first = false;
        if (k == 0)
            os << p.str();
        else
            os << "eps^" << k << "*(" << p.str() << ")";
    }
    if (first) os << "0";
    if (trunc_ < kExact) os << "  [O(eps^" << trunc_ + 2 << ")]";
    return os.str();
}

}  // namespace tophier
