#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "tophier/diff_poly.hpp"

namespace tophier {

/// Sparse exact-rational power series in a fixed set of variables, truncated
/// by total degree. Monomial keys are dense exponent vectors, ordered
/// lexicographically, so iteration order (and serialization) is deterministic.
class TSeries {
public:
    using Key = std::vector<std::uint8_t>;

    TSeries() = default;
    TSeries(int nvars, int maxdeg) : nvars_(nvars), maxdeg_(maxdeg) {}

    static TSeries variable(int nvars, int maxdeg, int i);
    static TSeries constant(int nvars, int maxdeg, const Rat& c);

    int nvars() const { return nvars_; }
    int maxdeg() const { return maxdeg_; }
    const std::map<Key, Rat>& terms() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    Rat constant_term() const;
    Rat coefficient(const Key& k) const;
    /// Coefficient of prod t_{spec_i} (a multiset of variable indices).
    Rat coefficient_of(const std::vector<int>& vars) const;

    void add_term(const Key& k, const Rat& c);

    TSeries operator-() const;
    TSeries& operator+=(const TSeries& o);
    TSeries& operator-=(const TSeries& o);
    friend TSeries operator*(const TSeries& a, const TSeries& b);
    TSeries& operator*=(const TSeries& o) { return *this = *this * o; }
    TSeries& operator*=(const Rat& r);
    friend TSeries operator+(TSeries a, const TSeries& b) { a += b; return a; }
    friend TSeries operator-(TSeries a, const TSeries& b) { a -= b; return a; }
    friend TSeries operator*(TSeries a, const Rat& r) { a *= r; return a; }
    friend bool operator==(const TSeries& a, const TSeries& b) { return a.c_ == b.c_; }

    TSeries derivative(int var) const;
    TSeries pow(int e) const;

    /// 1/this, log(this) for unit constant term 1; exp(this) for constant 0.
    TSeries inverse_unit() const;
    TSeries log_unit() const;
    TSeries exp_nilpotent() const;

    TSeries truncated(int deg) const;
    int min_degree() const;  // smallest total degree present; maxdeg+1 if zero

    std::string str(const std::function<std::string(int)>& var_name) const;

private:
    int nvars_ = 0;
    int maxdeg_ = 0;
    std::map<Key, Rat> c_;
};

/// Evaluates a differential polynomial with every jet v^{alpha,k} replaced by
/// a series. Denominator/log atoms require unit constant term 1 after
/// evaluation; exp atoms a zero constant term in the argument.
TSeries eval_diffpoly(const DiffPoly& p,
                      const std::function<TSeries(int comp, int order)>& jet_value,
                      int nvars, int maxdeg);

}  // namespace tophier
