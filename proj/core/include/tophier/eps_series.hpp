#pragma once

#include <map>

#include "tophier/diff_poly.hpp"

namespace tophier {

/// Truncated formal series in eps^2 with DiffPoly coefficients. Only even
/// powers occur; `trunc` is the highest retained power (kExact for values
/// known at every order, e.g. polynomials lifted into series).
/// Truncation propagates as the minimum over operands.
class EpsSeries {
public:
    static constexpr int kExact = 1 << 28;

    EpsSeries() = default;
    explicit EpsSeries(JetContextPtr ctx, int trunc = kExact)
        : ctx_(std::move(ctx)), trunc_(trunc) {}

    static EpsSeries lift(const DiffPoly& p, int trunc = kExact) {
        EpsSeries s(p.ctx(), trunc);
        s.set(0, p);
        return s;
    }
    static EpsSeries monomial(const DiffPoly& p, int order, int trunc = kExact) {
        EpsSeries s(p.ctx(), trunc);
        s.set(order, p);
        return s;
    }

    const JetContextPtr& ctx() const { return ctx_; }
    int trunc() const { return trunc_; }

    DiffPoly at(int order) const {
        auto it = c_.find(order);
        return it == c_.end() ? DiffPoly::zero(ctx_) : it->second;
    }
    void set(int order, const DiffPoly& p);
    const std::map<int, DiffPoly>& coefficients() const { return c_; }

    bool zero() const { return c_.empty(); }
    bool is_zero_through(int order) const;
    int max_order_present() const { return c_.empty() ? -1 : c_.rbegin()->first; }

    EpsSeries operator-() const;
    EpsSeries& operator+=(const EpsSeries& o);
    EpsSeries& operator-=(const EpsSeries& o);
    EpsSeries& operator*=(const EpsSeries& o);
    EpsSeries& operator*=(const DiffPoly& p);
    EpsSeries& operator*=(const Rat& r);
    friend EpsSeries operator+(EpsSeries a, const EpsSeries& b) { a += b; return a; }
    friend EpsSeries operator-(EpsSeries a, const EpsSeries& b) { a -= b; return a; }
    friend EpsSeries operator*(EpsSeries a, const EpsSeries& b) { a *= b; return a; }
    friend EpsSeries operator*(EpsSeries a, const DiffPoly& p) { a *= p; return a; }
    friend EpsSeries operator*(EpsSeries a, const Rat& r) { a *= r; return a; }

    EpsSeries dx() const;
    EpsSeries dx(int times) const;
    EpsSeries partial(int comp, int order) const;

    /// Multiplies by eps^by (by even, >= 0); exactness shifts with it.
    EpsSeries shifted(int by) const;
    EpsSeries truncated(int E) const;

    /// Coefficient-wise equality through min(trunc, other.trunc, E).
    static bool equal_through(const EpsSeries& a, const EpsSeries& b, int E);

    std::string str() const;

private:
    void drop_beyond_trunc();
    JetContextPtr ctx_;
    int trunc_ = kExact;
    std::map<int, DiffPoly> c_;
};

}  // namespace tophier
