#pragma once

#include <map>
#include <vector>

#include "tophier/quasitriv.hpp"

namespace tophier {

/// Coefficient polynomial in a formal parameter lambda (index = power).
using LamPoly = std::vector<EpsSeries>;

LamPoly lam_make(const EpsSeries& c, int lambda_pow);
void lam_add(LamPoly& a, const LamPoly& b);
bool lam_zero_through(const LamPoly& a, int E);
bool lam_equal_through(const LamPoly& a, const LamPoly& b, int E);

/// One raw summand f * delta^(order)(x-y) * lambda^pow, with f a function of
/// x-jets or of y-jets.
struct DeltaTerm {
    EpsSeries coef;
    int order = 0;
    int lambda_pow = 0;
    bool at_y = false;
};

/// Matrix of finite sums sum_s P_s(x-jets; eps) delta^(s)(x-y); normalized
/// form carries x-coefficients only.
class LocalPoissonBracket {
public:
    LocalPoissonBracket(JetContextPtr ctx, int E) : ctx_(std::move(ctx)), E_(E) {
        int n = ctx_->ncomp();
        entries_.assign(n, std::vector<std::map<int, LamPoly>>(n));
    }

    const JetContextPtr& ctx() const { return ctx_; }
    int eps_order() const { return E_; }
    int nfields() const { return ctx_->ncomp(); }

    void add_term(int a, int b, const DeltaTerm& t);
    void add_raw(int a, int b, const std::vector<DeltaTerm>& terms);

    const std::map<int, LamPoly>& entry(int a, int b) const { return entries_[a][b]; }
    LamPoly coefficient(int a, int b, int order) const;

    /// -B_{beta alpha}(y, x) rewritten with x-coefficients.
    LocalPoissonBracket transpose_negated() const;
    bool is_skew_symmetric() const;

    static bool equal_through(const LocalPoissonBracket& a, const LocalPoissonBracket& b, int E);

    std::string str() const;

private:
    JetContextPtr ctx_;
    int E_;
    // entries_[a][b]: delta order -> lambda polynomial of eps-series
    std::vector<std::vector<std::map<int, LamPoly>>> entries_;
};

/// Rewrites a finite sum of f(y-jets) delta^(k) and g(x-jets) delta^(k)
/// with all coefficients at x (the derivative-of-delta identity).
std::map<int, EpsSeries> normalize_delta(const JetContextPtr& ctx, int E,
                                         const std::vector<DeltaTerm>& raw);

/// Bracket of the substituted variables: chain rule over jets, normalized,
/// coefficients re-expressed through the inverse map, truncated at eps^E.
LocalPoissonBracket transform_bracket(const LocalPoissonBracket& b, const JetMap& map,
                                      const JetMap& inverse, int E);
LocalPoissonBracket transform_bracket(const LocalPoissonBracket& b, const JetMap& map, int E);

}  // namespace tophier
