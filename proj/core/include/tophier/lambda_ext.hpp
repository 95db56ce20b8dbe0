#pragma once

#include <map>

#include "tophier/diff_poly.hpp"

namespace tophier {

/// DiffPoly coefficients on powers of s = (v - lambda)^{-1/2}; s^2 = w.
/// Derivative rules: dx w = -v_x w^2, dx s = -(1/2) v_x s^3. Everything the
/// loop equation displays normalizes to pure w-powers (even s-powers).
class LambdaExtPoly {
public:
    explicit LambdaExtPoly(JetContextPtr ctx) : ctx_(std::move(ctx)) {}

    static LambdaExtPoly s_power(JetContextPtr ctx, int spow, const Rat& c = Rat(1));
    static LambdaExtPoly lift(const DiffPoly& p);

    const JetContextPtr& ctx() const { return ctx_; }
    const std::map<int, DiffPoly>& coefficients() const { return c_; }

    bool zero() const { return c_.empty(); }
    void add(int spow, const DiffPoly& p);
    DiffPoly coeff_s(int spow) const;
    DiffPoly coeff_w(int wpow) const { return coeff_s(2 * wpow); }

    /// All s-powers even (a polynomial in w).
    bool pure_w() const;
    /// No w^0 term (vanishes as lambda -> infinity).
    bool vanishes_at_infinity() const;
    int max_w_power() const;

    LambdaExtPoly operator-() const;
    LambdaExtPoly& operator+=(const LambdaExtPoly& o);
    LambdaExtPoly& operator-=(const LambdaExtPoly& o);
    friend LambdaExtPoly operator*(const LambdaExtPoly& a, const LambdaExtPoly& b);
    LambdaExtPoly& operator*=(const DiffPoly& p);
    LambdaExtPoly& operator*=(const Rat& r);

    LambdaExtPoly dx() const;
    LambdaExtPoly dx(int times) const;

    /// Coefficient of lambda^{-j} in the expansion at lambda = infinity,
    /// using w^p = (-1)^p sum_i C(p-1+i, i) v^i lambda^{-p-i}. Requires a
    /// pure-w value.
    DiffPoly lambda_coefficient(int j) const;

    std::string str() const;

private:
    JetContextPtr ctx_;
    std::map<int, DiffPoly> c_;  // s-power -> coefficient
};

/// The three displayed coefficient families of the one-field loop equation.
LambdaExtPoly loop_A(JetContextPtr ctx, int k);
LambdaExtPoly loop_B(JetContextPtr ctx, int k);
LambdaExtPoly loop_C(JetContextPtr ctx, int k, int l);

}  // namespace tophier
