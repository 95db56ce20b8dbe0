#pragma once

#include <map>

#include "tophier/eps_series.hpp"

namespace tophier {

/// Polynomial in eps (both parities) with DiffPoly coefficients; the
/// coefficient ring for pseudodifferential symbols, where single powers of
/// eps enter through the Leibniz rule.
struct EpsPoly {
    std::map<int, DiffPoly> c;

    bool zero() const { return c.empty(); }
    void add(int k, const DiffPoly& p);
    EpsPoly& operator+=(const EpsPoly& o);
    EpsPoly& operator-=(const EpsPoly& o);
    friend EpsPoly operator*(const EpsPoly& a, const EpsPoly& b);
    EpsPoly& operator*=(const Rat& r);
    EpsPoly shifted(int by) const;
    EpsPoly dx() const;
    bool operator==(const EpsPoly& o) const { return c == o.c; }
};

/// Truncated Laurent expansion in the symbol (eps d_x): sum of
/// a_j (eps d_x)^j for trunc <= j <= N. `trunc` marks the lowest symbol
/// order whose coefficient is reliable; kExactLow for exact operators.
class PseudoDiffOp {
public:
    static constexpr int kExactLow = INT32_MIN / 4;

    explicit PseudoDiffOp(JetContextPtr ctx, int trunc = kExactLow)
        : ctx_(std::move(ctx)), trunc_(trunc) {}

    const JetContextPtr& ctx() const { return ctx_; }
    int trunc() const { return trunc_; }
    int max_order() const { return a_.empty() ? kExactLow : a_.rbegin()->first; }

    EpsPoly coef(int order) const {
        auto it = a_.find(order);
        return it == a_.end() ? EpsPoly{} : it->second;
    }
    void set_coef(int order, EpsPoly p);
    const std::map<int, EpsPoly>& coefficients() const { return a_; }

    PseudoDiffOp& operator+=(const PseudoDiffOp& o);
    PseudoDiffOp& operator-=(const PseudoDiffOp& o);
    PseudoDiffOp& operator*=(const Rat& r);

    /// Differential part: orders >= 0. Requires those orders reliable.
    PseudoDiffOp plus_part() const;

    /// The Lax operator L = (1/2)(eps d_x)^2 + u for a one-field context.
    static PseudoDiffOp lax_kdv(JetContextPtr ctx);

    std::string str() const;

private:
    JetContextPtr ctx_;
    int trunc_;
    std::map<int, EpsPoly> a_;  // only nonzero coefficients
};

/// Composition via the generalized Leibniz rule
/// (eps d_x)^j o f = sum_s C(j,s) eps^s f^(s) (eps d_x)^{j-s},
/// truncated below symbol order -M; eps powers tracked exactly.
PseudoDiffOp compose(const PseudoDiffOp& A, const PseudoDiffOp& B, int M);

/// R with R o R = 2L through the retained orders, leading symbol eps d_x,
/// coefficients solved order by order down to -M.
PseudoDiffOp sqrt2L(JetContextPtr ctx, int M);

/// Right-hand side of the i-th KdV flow from [A_i, L] with
/// A_i = (2L)^{(2i+1)/2}_+ / (2i+1)!!, truncated at eps^E.
EpsSeries kdv_rhs(JetContextPtr ctx, int i, int E);

/// A_i itself (for the leading-coefficient checks).
PseudoDiffOp kdv_a_operator(JetContextPtr ctx, int i, int M);

/// All symbol orders != 0 of [A_i, L] (must vanish; exposed for tests).
PseudoDiffOp kdv_commutator(JetContextPtr ctx, int i, int M);

}  // namespace tophier
