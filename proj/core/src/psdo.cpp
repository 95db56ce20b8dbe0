#include "tophier/psdo.hpp"

#include <sstream>

namespace tophier {

void EpsPoly::add(int k, const DiffPoly& p) {
    if (p.is_zero()) return;
    auto [it, fresh] = c.emplace(k, p);
    if (!fresh) {
        it->second += p;
        if (it->second.is_zero()) c.erase(it);
    }
}

EpsPoly& EpsPoly::operator+=(const EpsPoly& o) {
    for (const auto& [k, p] : o.c) add(k, p);
    return *this;
}

EpsPoly& EpsPoly::operator-=(const EpsPoly& o) {
    for (const auto& [k, p] : o.c) add(k, -p);
    return *this;
}

EpsPoly operator*(const EpsPoly& a, const EpsPoly& b) {
    EpsPoly r;
    for (const auto& [ka, pa] : a.c)
        for (const auto& [kb, pb] : b.c) r.add(ka + kb, pa * pb);
    return r;
}

EpsPoly& EpsPoly::operator*=(const Rat& r) {
    if (r.is_zero()) {
        c.clear();
        return *this;
    }
    for (auto& [k, p] : c) {
        (void)k;
        p *= r;
    }
    return *this;
}

EpsPoly EpsPoly::shifted(int by) const {
    EpsPoly r;
    for (const auto& [k, p] : c) r.c.emplace(k + by, p);
    return r;
}

EpsPoly EpsPoly::dx() const {
    EpsPoly r;
    for (const auto& [k, p] : c) r.add(k, p.dx());
    return r;
}

void PseudoDiffOp::set_coef(int order, EpsPoly p) {
    if (p.zero())
        a_.erase(order);
    else
        a_[order] = std::move(p);
}

PseudoDiffOp& PseudoDiffOp::operator+=(const PseudoDiffOp& o) {
    trunc_ = std::max(trunc_, o.trunc_);
    for (const auto& [k, p] : o.a_) {
        auto it = a_.find(k);
        if (it == a_.end()) {
            a_.emplace(k, p);
        } else {
            it->second += p;
            if (it->second.zero()) a_.erase(it);
        }
    }
    return *this;
}

PseudoDiffOp& PseudoDiffOp::operator-=(const PseudoDiffOp& o) {
    PseudoDiffOp neg = o;
    for (auto& [k, p] : neg.a_) {
        (void)k;
        p *= Rat(-1);
    }
    return *this += neg;
}

PseudoDiffOp& PseudoDiffOp::operator*=(const Rat& r) {
    for (auto& [k, p] : a_) {
        (void)k;
        p *= r;
    }
    return *this;
}

PseudoDiffOp PseudoDiffOp::plus_part() const {
    if (trunc_ > 0)
        raise(ErrorKind::InternalConsistency,
              "plus_part: nonnegative symbol orders are not reliable at this truncation");
    PseudoDiffOp r(ctx_, kExactLow);
    for (const auto& [k, p] : a_)
        if (k >= 0) r.a_.emplace(k, p);
    return r;
}

PseudoDiffOp PseudoDiffOp::lax_kdv(JetContextPtr ctx) {
    PseudoDiffOp L(ctx);
    EpsPoly half;
    half.add(0, DiffPoly::constant(ctx, Rat(1, 2)));
    L.set_coef(2, half);
    EpsPoly u;
    u.add(0, DiffPoly::jet(ctx, 0, 0));
    L.set_coef(0, u);
    return L;
}

std::string PseudoDiffOp::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto it = a_.rbegin(); it != a_.rend(); ++it) {
        if (!first) os << "  +  ";
        first = false;
        os << "[";
        bool f2 = true;
        for (const auto& [k, p] : it->second.c) {
            if (!f2) os << " + ";
            f2 = false;
            if (k != 0) os << "eps^" << k << "*";
            os << "(" << p.str() << ")";
        }
        os << "] D^" << it->first;
    }
    if (first) os << "0";
    return os.str();
}

PseudoDiffOp compose(const PseudoDiffOp& A, const PseudoDiffOp& B, int M) {
    const auto& ctx = A.ctx();
    int lo = -M;
    int reliability = PseudoDiffOp::kExactLow;
    if (A.trunc() > PseudoDiffOp::kExactLow)
        reliability = std::max(reliability, A.trunc() + B.max_order());
    if (B.trunc() > PseudoDiffOp::kExactLow)
        reliability = std::max(reliability, B.trunc() + A.max_order());
    int result_trunc = std::max(lo, reliability);

    PseudoDiffOp R(ctx, result_trunc);
    for (const auto& [p, ap] : A.coefficients()) {
        for (const auto& [q, bq] : B.coefficients()) {
            // cache iterated derivatives of bq along the s loop
            EpsPoly bder = bq;
            for (int s = 0;; ++s) {
                int order = p + q - s;
                if (order < result_trunc) break;
                if (p >= 0 && s > p) break;
                mpz_class binom = binomial(p, s);
                if (binom != 0) {
                    EpsPoly term = ap * bder;
                    term *= Rat(binom);
                    term = term.shifted(s);
                    EpsPoly cur = R.coef(order);
                    cur += term;
                    R.set_coef(order, cur);
                }
                bder = bder.dx();
            }
        }
    }
    return R;
}

PseudoDiffOp sqrt2L(JetContextPtr ctx, int M) {
    if (M < 1) raise(ErrorKind::Precondition, "sqrt2L: M >= 1");
    PseudoDiffOp L = PseudoDiffOp::lax_kdv(ctx);
    PseudoDiffOp twoL = L;
    twoL *= Rat(2);

    // The known coefficients are exact at every step; the next one is read
    // off the defect [2L - R^2]_{j+1} = 2 r_j, which only involves them.
    PseudoDiffOp R(ctx, PseudoDiffOp::kExactLow);
    EpsPoly one;
    one.add(0, DiffPoly::constant(ctx, Rat(1)));
    R.set_coef(1, one);

    for (int j = 0; j >= -M; --j) {
        PseudoDiffOp R2 = compose(R, R, -(j + 1));
        PseudoDiffOp defect = twoL;
        defect -= R2;
        EpsPoly rj = defect.coef(j + 1);
        rj *= Rat(1, 2);
        if (!rj.zero()) R.set_coef(j, rj);
    }

    PseudoDiffOp out(ctx, -M);
    for (const auto& [k, p] : R.coefficients()) out.set_coef(k, p);
    return out;
}

namespace {

PseudoDiffOp odd_power(const PseudoDiffOp& R, int n, int M) {
    PseudoDiffOp P = R;
    for (int i = 1; i < n; ++i) P = compose(P, R, M);
    return P;
}

}  // namespace

PseudoDiffOp kdv_a_operator(JetContextPtr ctx, int i, int M) {
    PseudoDiffOp R = sqrt2L(ctx, M);
    PseudoDiffOp P = odd_power(R, 2 * i + 1, M);
    PseudoDiffOp A = P.plus_part();
    A *= Rat(mpz_class(1), double_factorial(2 * i + 1));
    return A;
}

PseudoDiffOp kdv_commutator(JetContextPtr ctx, int i, int M) {
    PseudoDiffOp L = PseudoDiffOp::lax_kdv(ctx);
    PseudoDiffOp A = kdv_a_operator(ctx, i, M);
    // both differential: composition is exact at every order
    PseudoDiffOp AL = compose(A, L, 1);
    PseudoDiffOp LA = compose(L, A, 1);
    AL -= LA;
    return AL;
}

EpsSeries kdv_rhs(JetContextPtr ctx, int i, int E) {
    if (i < 0 || E < 0 || E % 2 != 0)
        raise(ErrorKind::Precondition, "kdv_rhs: need i >= 0 and even E >= 0");
    int M = std::max(E / 2 + 2, 2 * i);
    PseudoDiffOp C = kdv_commutator(ctx, i, M);
    for (const auto& [k, p] : C.coefficients()) {
        (void)p;
        if (k != 0)
            raise(ErrorKind::InternalConsistency,
                  "kdv_rhs: [A_i, L] has a nonzero coefficient at symbol order " +
                      std::to_string(k));
    }
    // [A_i, L] = eps * (flow right-hand side); strip the single eps
    EpsPoly c0 = C.coef(0);
    EpsSeries rhs(ctx, E);
    for (const auto& [k, p] : c0.c) {
        if (k < 1 || (k - 1) % 2 != 0)
            raise(ErrorKind::InternalConsistency, "kdv_rhs: unexpected eps parity");
        if (k - 1 <= E) rhs.set(k - 1, p);
    }
    return rhs;
}

}  // namespace tophier
