#include "tophier/wktau.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tophier {

TSeries wk_vtop(int D, int P) {
    int n = P + 1;
    TSeries v(n, D);
    for (int iter = 0; iter <= D; ++iter) {
        TSeries next(n, D);
        TSeries vpow = TSeries::constant(n, D, Rat(1));
        for (int p = 0; p <= P; ++p) {
            if (p > 0) vpow = vpow * v;
            TSeries term = TSeries::variable(n, D, p) * vpow;
            term *= rat_factorial_inv(p);
            next += term;
        }
        if (next == v) break;
        v = next;
    }
    return v;
}

namespace {

// multisets (p_1 <= ... <= p_n) with sum = total, entries <= P
void multisets_with_sum(int n, int total, int P, int minval, std::vector<int>& cur,
                        const std::function<void(const std::vector<int>&)>& fn) {
    if (n == 0) {
        if (total == 0) fn(cur);
        return;
    }
    for (int p = minval; p <= std::min(P, total); ++p) {
        cur.push_back(p);
        multisets_with_sum(n - 1, total - p, P, p, cur, fn);
        cur.pop_back();
    }
}

Rat multiset_multiplicity_factorials(const std::vector<int>& spec) {
    Rat m(1);
    int run = 1;
    for (std::size_t i = 1; i <= spec.size(); ++i) {
        if (i < spec.size() && spec[i] == spec[i - 1]) {
            ++run;
        } else {
            m *= Rat(factorial(run));
            run = 1;
        }
    }
    return m;
}

}  // namespace

TSeries wk_f0(int D, int P) {
    int n = P + 1;
    TSeries f(n, D);
    for (int m = 3; m <= D; ++m) {
        Rat outer(mpz_class(1), mpz_class(m) * (m - 1) * (m - 2));
        std::vector<int> cur;
        multisets_with_sum(m, m - 3, P, 0, cur, [&](const std::vector<int>& ps) {
            // ordered tuples: m! / prod(multiplicities!)
            Rat count(factorial(m));
            count /= multiset_multiplicity_factorials(ps);
            Rat coef = outer * count;
            for (int p : ps) coef *= rat_factorial_inv(p);
            TSeries::Key k(n, 0);
            for (int p : ps) ++k[p];
            f.add_term(k, coef);
        });
    }
    return f;
}

TSeries wk_f1(int D, int P) {
    // the t_0-derivative costs one degree of exactness
    TSeries vx = wk_vtop(D + 1, P).derivative(0).truncated(D);
    TSeries f = vx.log_unit();
    f *= Rat(1, 24);
    return f;
}

TSeries wk_eval_at_vtop(const DiffPoly& jet_expr, int D, int P) {
    int maxk = std::max(jet_expr.max_jet_order(), 0);
    TSeries v = wk_vtop(D + maxk, P);
    std::vector<TSeries> jets{v};
    for (int k = 1; k <= maxk; ++k) jets.push_back(jets.back().derivative(0));
    // exactness: d^k/dt_0^k of a (D+maxk)-exact series is (D+maxk-k)-exact
    for (int k = 0; k <= maxk; ++k) jets[k] = jets[k].truncated(D);
    return eval_diffpoly(
        jet_expr, [&](int comp, int k) { (void)comp; return jets.at(k); }, P + 1, D);
}

Rat series_intersection(const TSeries& f, const std::vector<int>& spec) {
    std::vector<int> s = spec;
    std::sort(s.begin(), s.end());
    Rat c = f.coefficient_of(s);
    return c * multiset_multiplicity_factorials(s);
}

Rat wk_intersect_genus0(const std::vector<int>& spec, std::string* note) {
    int n = static_cast<int>(spec.size());
    long total = 0;
    int maxp = 0;
    for (int p : spec) {
        total += p;
        maxp = std::max(maxp, p);
    }
    if (total != n - 3) {
        if (note) *note = "dimension constraint sum p_i = n-3 violated; the number is 0";
        return Rat(0);
    }
    TSeries f0 = wk_f0(n, std::max(maxp, 1));
    return series_intersection(f0, spec);
}

Rat wk_intersect_genus1(const std::vector<int>& spec) {
    int n = static_cast<int>(spec.size());
    int maxp = 1;
    for (int p : spec) maxp = std::max(maxp, p);
    TSeries f1 = wk_f1(std::max(n, 1), maxp + 1);
    return series_intersection(f1, spec);
}

Rat wk_genus2_lambda(const std::vector<int>& spec, HodgeClass which) {
    int n = static_cast<int>(spec.size());
    long total = 0;
    int maxp = 0;
    for (int k : spec) {
        total += k;
        maxp = std::max(maxp, k);
    }
    if (which == HodgeClass::Lambda2) {
        if (total != n + 1) return Rat(0);
        Rat r(7, 5760);
        r *= Rat(factorial(n + 1));
        for (int k : spec) r /= Rat(factorial(k));
        return r;
    }
    // lambda_1: (1/480) v_xxx / v_x - (11/5760) v_xx^2 / v_x^2 at v_top
    int D = n;
    int P = std::max(maxp, 1);
    TSeries v = wk_vtop(D + 3, P);
    TSeries vx = v.derivative(0).truncated(D);
    TSeries vxx = v.derivative(0).derivative(0).truncated(D);
    TSeries vxxx = v.derivative(0).derivative(0).derivative(0).truncated(D);
    TSeries inv = vx.inverse_unit();
    TSeries f = vxxx * inv * Rat(1, 480) - vxx * vxx * inv * inv * Rat(11, 5760);
    return series_intersection(f, spec);
}

// ------------------------------------------------------------ Virasoro check

namespace {

/// Laurent polynomial in eps with TSeries coefficients (even orders only).
using EpsLaurent = std::map<int, TSeries>;

EpsLaurent laurent_scale(const EpsLaurent& a, const Rat& r) {
    EpsLaurent out;
    for (const auto& [k, s] : a) {
        TSeries t = s;
        t *= r;
        if (!t.is_zero()) out.emplace(k, std::move(t));
    }
    return out;
}

void laurent_add(EpsLaurent& a, const EpsLaurent& b, int lo, int hi) {
    for (const auto& [k, s] : b) {
        if (k < lo || k > hi) continue;
        auto it = a.find(k);
        if (it == a.end())
            a.emplace(k, s);
        else
            it->second += s;
    }
}

EpsLaurent laurent_mul(const EpsLaurent& a, const EpsLaurent& b, int lo, int hi) {
    EpsLaurent out;
    for (const auto& [ka, sa] : a)
        for (const auto& [kb, sb] : b) {
            int k = ka + kb;
            if (k < lo || k > hi) continue;
            TSeries prod = sa * sb;
            if (prod.is_zero()) continue;
            auto it = out.find(k);
            if (it == out.end())
                out.emplace(k, std::move(prod));
            else
                it->second += prod;
        }
    return out;
}

/// minimal t-degree of a tau coefficient at eps order p that involves some
/// genus >= 3 factor (see the windowing note in wk_virasoro_check)
int pollution_min_degree(int p) {
    if (p >= 4) return 1;
    return 1 + 3 * (4 - p) / 2;
}

int unsafe_degree(int o) {
    int u = pollution_min_degree(o) - 1;                // RHS derivative
    u = std::min(u, pollution_min_degree(o));           // t d/dt and scalar
    u = std::min(u, pollution_min_degree(o - 2) - 2);   // eps^2 d^2
    u = std::min(u, pollution_min_degree(o + 2) + 2);   // eps^-2 t t
    return u;
}

}  // namespace

VirasoroReport wk_virasoro_check(int m_max, int D, int E, const DiffPoly& f2_jets) {
    if (m_max > 2 || E > 2)
        raise(ErrorKind::Precondition, "wk_virasoro_check: genus cap limits m_max <= 2, E <= 2");
    VirasoroReport rep;
    int P = D + std::max(m_max, 1) + 2;
    int nv = P + 1;
    int lo = -2 * (D / 3 + 1);
    int hi = 2;

    TSeries F0 = wk_f0(D, P);
    TSeries F1 = wk_f1(D, P);
    TSeries F2 = wk_eval_at_vtop(f2_jets, D, P);

    // tau = exp(eps^-2 F0) * exp(F1) * (1 + eps^2 F2), eps orders in [lo, hi]
    EpsLaurent tau;
    tau.emplace(0, TSeries::constant(nv, D, Rat(1)));
    {
        EpsLaurent e0;
        TSeries p = TSeries::constant(nv, D, Rat(1));
        for (int j = 0;; ++j) {
            if (j > 0) {
                p = p * F0;
                p *= Rat(mpz_class(1), mpz_class(j));
                if (p.is_zero()) break;
            }
            if (-2 * j < lo) break;
            e0.emplace(-2 * j, p);
        }
        tau = laurent_mul(tau, e0, lo, hi);
        EpsLaurent e1;
        e1.emplace(0, F1.exp_nilpotent());
        tau = laurent_mul(tau, e1, lo, hi);
        EpsLaurent e2;
        e2.emplace(0, TSeries::constant(nv, D, Rat(1)));
        e2.emplace(2, F2);
        tau = laurent_mul(tau, e2, lo, hi);
    }

    auto dtau = [&](int k) {
        EpsLaurent out;
        for (const auto& [o, s] : tau) {
            TSeries d = s.derivative(k);
            if (!d.is_zero()) out.emplace(o, std::move(d));
        }
        return out;
    };

    for (int m = -1; m <= m_max; ++m) {
        EpsLaurent lhs;
        if (m == -1) {
            for (int k = 1; k <= P; ++k) {
                EpsLaurent t;
                TSeries tk = TSeries::variable(nv, D, k);
                for (const auto& [o, s] : dtau(k - 1)) t.emplace(o, tk * s);
                laurent_add(lhs, t, lo, hi);
            }
            EpsLaurent t0;
            TSeries half_t0sq = TSeries::variable(nv, D, 0).pow(2) * Rat(1, 2);
            for (const auto& [o, s] : tau) {
                if (o - 2 < lo || o - 2 > hi) continue;
                t0.emplace(o - 2, half_t0sq * s);
            }
            laurent_add(lhs, t0, lo, hi);
        } else {
            // eps^2/2 sum_{k+l=m-1} ((2k+1)!!(2l+1)!!/2^{m+1}) d_k d_l
            for (int k = 0; k <= m - 1; ++k) {
                int l = m - 1 - k;
                Rat c(double_factorial(2 * k + 1) * double_factorial(2 * l + 1),
                      mpz_class(1) << (m + 1));
                c *= Rat(1, 2);
                EpsLaurent t;
                for (const auto& [o, s] : tau) {
                    if (o + 2 < lo || o + 2 > hi) continue;
                    TSeries d = s.derivative(k).derivative(l);
                    d *= c;
                    if (!d.is_zero()) t.emplace(o + 2, std::move(d));
                }
                laurent_add(lhs, t, lo, hi);
            }
            // sum_k ((2k+2m+1)!!/(2^{m+1} (2k-1)!!)) t_k d_{k+m}
            for (int k = 0; k + m <= P; ++k) {
                Rat c(double_factorial(2 * k + 2 * m + 1),
                      (mpz_class(1) << (m + 1)) * double_factorial(2 * k - 1));
                EpsLaurent t;
                TSeries tk = TSeries::variable(nv, D, k);
                for (const auto& [o, s] : dtau(k + m)) {
                    TSeries d = tk * s;
                    d *= c;
                    if (!d.is_zero()) t.emplace(o, std::move(d));
                }
                laurent_add(lhs, t, lo, hi);
            }
            if (m == 0) laurent_add(lhs, laurent_scale(tau, Rat(1, 16)), lo, hi);
        }

        Rat rhs_c(double_factorial(2 * m + 3), mpz_class(1) << (m + 1));
        EpsLaurent rhs = laurent_scale(dtau(m + 1), rhs_c);

        // residual within the computed window
        for (int o : {-2, 0, 2}) {
            if (E < o) continue;
            int safe_deg = std::min(D - 2, unsafe_degree(o) - 1);
            rep.notes.push_back("m=" + std::to_string(m) + " eps^" + std::to_string(o) +
                                ": window degree <= " + std::to_string(safe_deg) +
                                ", max index <= " + std::to_string(P - std::max(m, 1)));
            TSeries l = lhs.count(o) ? lhs.at(o) : TSeries(nv, D);
            TSeries r = rhs.count(o) ? rhs.at(o) : TSeries(nv, D);
            TSeries diff = l - r;

            auto in_window = [&](const TSeries::Key& key) {
                int deg = 0, maxidx = -1;
                for (int i = 0; i < nv; ++i)
                    if (key[i]) {
                        deg += key[i];
                        maxidx = i;
                    }
                return deg <= safe_deg && maxidx <= P - std::max(m, 1);
            };

            std::set<TSeries::Key> support;
            for (const auto& [key, val] : l.terms()) {
                (void)val;
                if (in_window(key)) support.insert(key);
            }
            for (const auto& [key, val] : r.terms()) {
                (void)val;
                if (in_window(key)) support.insert(key);
            }
            rep.checked_coefficients += static_cast<int>(support.size());

            for (const auto& [key, val] : diff.terms()) {
                if (!in_window(key)) continue;
                rep.pass = false;
                std::ostringstream os;
                os << "m=" << m << " eps^" << o << " monomial ";
                for (int i = 0; i < nv; ++i)
                    if (key[i]) os << "t" << i << "^" << static_cast<int>(key[i]);
                os << " : " << val.str();
                rep.violations.push_back(os.str());
            }
        }
    }
    return rep;
}

}  // namespace tophier
