#include "tophier/loop_solver.hpp"

#include <map>

namespace tophier {

namespace {

struct AnsatzMonomial {
    int k;          // gradient component
    Monomial mono;  // in v_xx .. v^(3g-2)
    int mden;       // v_x exponent
};

// partitions of `total` into parts within [2, maxpart], at most `maxcount` parts
void enumerate_partitions(int total, int maxpart, int maxcount,
                          std::vector<std::pair<int, int>>& stack,
                          std::vector<std::vector<std::pair<int, int>>>& out) {
    if (total == 0) {
        out.push_back(stack);
        return;
    }
    if (maxcount == 0 || maxpart < 2) return;
    int start = stack.empty() ? maxpart : std::min(maxpart, stack.back().first);
    for (int part = std::min(start, total); part >= 2; --part) {
        int maxrep = std::min(maxcount, total / part);
        for (int rep = maxrep; rep >= 1; --rep) {
            stack.push_back({part, rep});
            enumerate_partitions(total - part * rep, part - 1, maxcount - rep, stack, out);
            stack.pop_back();
        }
    }
}

std::vector<AnsatzMonomial> build_ansatz(int g, int jet_degree_cap, int den_cap_base) {
    std::vector<AnsatzMonomial> out;
    int kmax = 3 * g - 2;
    for (int k = 1; k <= kmax; ++k) {
        // jet grade of dF_g/dv^(k) is 2g-2-k; monomial grade T = 2g-2-k+mden
        for (int mden = 0; mden <= den_cap_base + 2 * jet_degree_cap; ++mden) {
            int T = 2 * g - 2 - k + mden;
            if (T < 0) continue;
            std::vector<std::vector<std::pair<int, int>>> partitions;
            std::vector<std::pair<int, int>> stack;
            enumerate_partitions(T, kmax, jet_degree_cap, stack, partitions);
            for (const auto& parts : partitions) {
                int nfactors = 0;
                for (const auto& [part, rep] : parts) {
                    (void)part;
                    nfactors += rep;
                }
                if (mden > den_cap_base + 2 * nfactors) continue;
                AnsatzMonomial am;
                am.k = k;
                am.mden = mden;
                for (const auto& [part, rep] : parts) am.mono.mul_var(Monomial::jet_id(0, part), rep);
                out.push_back(std::move(am));
            }
        }
    }
    return out;
}

/// sparse exact Gaussian elimination; returns empty optional on inconsistency
struct LinearSystem {
    std::vector<std::map<int, Rat>> rows;
    std::vector<Rat> rhs;

    void add_row(std::map<int, Rat> row, Rat r) {
        rows.push_back(std::move(row));
        rhs.push_back(std::move(r));
    }

    /// Solves; nullopt when inconsistent. `degenerate` reports columns that
    /// never became leading (the solution sets them to zero).
    std::optional<std::vector<Rat>> solve(int ncols, std::vector<int>& degenerate) {
        std::vector<int> pivot_of_col(ncols, -1);
        std::size_t next_row = 0;
        for (int col = 0; col < ncols && next_row < rows.size(); ++col) {
            std::size_t pr = SIZE_MAX;
            for (std::size_t r = next_row; r < rows.size(); ++r) {
                auto it = rows[r].find(col);
                if (it != rows[r].end() && !it->second.is_zero()) {
                    pr = r;
                    break;
                }
            }
            if (pr == SIZE_MAX) continue;
            std::swap(rows[pr], rows[next_row]);
            std::swap(rhs[pr], rhs[next_row]);
            Rat lead = rows[next_row].at(col);
            for (auto& [c, v] : rows[next_row]) {
                (void)c;
                v /= lead;
            }
            rhs[next_row] /= lead;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (r == next_row) continue;
                auto it = rows[r].find(col);
                if (it == rows[r].end() || it->second.is_zero()) continue;
                Rat f = it->second;
                for (const auto& [c, v] : rows[next_row]) {
                    Rat delta = v * f;
                    auto jt = rows[r].find(c);
                    if (jt == rows[r].end()) {
                        if (!delta.is_zero()) rows[r].emplace(c, -delta);
                    } else {
                        jt->second -= delta;
                        if (jt->second.is_zero()) rows[r].erase(jt);
                    }
                }
                rhs[r] -= rhs[next_row] * f;
            }
            pivot_of_col[col] = static_cast<int>(next_row);
            ++next_row;
        }
        for (std::size_t r = next_row; r < rows.size(); ++r) {
            bool zero = true;
            for (const auto& [c, v] : rows[r]) {
                (void)c;
                if (!v.is_zero()) zero = false;
            }
            if (zero && !rhs[r].is_zero()) return std::nullopt;
        }
        std::vector<Rat> x(ncols, Rat(0));
        for (int col = 0; col < ncols; ++col) {
            if (pivot_of_col[col] >= 0)
                x[col] = rhs[pivot_of_col[col]];
            else
                degenerate.push_back(col);
        }
        return x;
    }
};

}  // namespace

std::vector<DiffPoly> solve_genus_gradient(JetContextPtr ctx, int g,
                                           const std::vector<DiffPoly>& prior,
                                           const SolveGenusOptions& opt) {
    if (g < 1) raise(ErrorKind::Precondition, "solve_genus: g >= 1");
    if (static_cast<int>(prior.size()) != g - 1)
        raise(ErrorKind::Precondition, "solve_genus: prior must hold F_1..F_{g-1}");
    if (ctx->ncomp() != 1 || ctx->n_den_atoms() < 1)
        raise(ErrorKind::Precondition, "solve_genus: one-field algebra localized at v_x expected");

    int kmax = 3 * g - 2;

    // right-hand side of the w-matched equation for Sum_k A_k dF_g/dv^(k)
    LambdaExtPoly rhs(ctx);
    if (g == 1) {
        rhs -= LambdaExtPoly::s_power(ctx, 4, Rat(1, 16));
    } else {
        const DiffPoly& Fprev = prior[g - 2];
        int jmax = 3 * (g - 1) - 2;
        for (int k = 0; k <= jmax; ++k) {
            DiffPoly pk = Fprev.partial(0, k);
            if (pk.is_zero()) continue;
            LambdaExtPoly t = loop_B(ctx, k);
            t *= pk;
            rhs += t;
        }
        for (int k = 0; k <= jmax; ++k) {
            for (int l = 0; l <= jmax; ++l) {
                DiffPoly second = prior[g - 2].partial(0, k).partial(0, l);
                DiffPoly pairs = DiffPoly::zero(ctx);
                for (int h = 1; h <= g - 1; ++h)
                    pairs += prior[h - 1].partial(0, k) * prior[g - h - 1].partial(0, l);
                DiffPoly coef = second + pairs;
                if (coef.is_zero()) continue;
                LambdaExtPoly t = loop_C(ctx, k, l);
                t *= coef * Rat(1, 2);
                rhs += t;
            }
        }
    }

    std::vector<LambdaExtPoly> A;
    A.reserve(kmax + 1);
    for (int k = 0; k <= kmax; ++k) A.push_back(loop_A(ctx, k));

    int deg_cap = opt.jet_degree_cap > 0 ? opt.jet_degree_cap : std::max(1, 3 * g - 3);
    int den_base = opt.den_cap_base > 0 ? opt.den_cap_base : 2 * g;

    std::string last_failure;
    for (int attempt = 0; attempt <= opt.retries; ++attempt) {
        auto ansatz = build_ansatz(g, deg_cap, den_base);
        int ncols = static_cast<int>(ansatz.size());

        // assemble: rows indexed by (w-power, monomial) of the cleared equation
        std::map<std::pair<int, Monomial>, std::map<int, Rat>, decltype([](const auto& a,
                                                                           const auto& b) {
                     if (a.first != b.first) return a.first < b.first;
                     return Monomial::cmp(a.second, b.second) < 0;
                 })>
            row_coefs;
        std::map<std::pair<int, Monomial>, Rat, decltype([](const auto& a, const auto& b) {
                     if (a.first != b.first) return a.first < b.first;
                     return Monomial::cmp(a.second, b.second) < 0;
                 })>
            row_rhs;

        // per w-power common v_x clearing exponent
        std::map<int, int> clear_pow;
        auto see = [&](int wpow, const DiffPoly& p) {
            int d = p.data().den.empty() ? 0 : p.data().den[0];
            auto& c = clear_pow[wpow];
            c = std::max(c, d);
        };
        std::vector<std::map<int, DiffPoly>> contrib(ncols);  // wpow -> coefficient
        for (int t = 0; t < ncols; ++t) {
            const auto& am = ansatz[t];
            PolyData monod;
            monod.num.emplace(am.mono, Rat(1));
            DiffPoly mono(ctx, std::move(monod));
            DiffPoly gk = mono * DiffPoly::inv_atom(ctx, 0, am.mden);
            for (const auto& [spow, acoef] : A[am.k].coefficients()) {
                if (spow % 2 != 0)
                    raise(ErrorKind::InternalConsistency, "loop A_k not pure-w");
                DiffPoly c = acoef * gk;
                if (c.is_zero()) continue;
                contrib[t][spow / 2] += c;
                see(spow / 2, c);
            }
        }
        std::map<int, DiffPoly> rhs_by_w;
        for (const auto& [spow, rcoef] : rhs.coefficients()) {
            if (spow % 2 != 0) raise(ErrorKind::InternalConsistency, "loop rhs not pure-w");
            rhs_by_w[spow / 2] = rcoef;
            see(spow / 2, rcoef);
        }

        auto cleared_terms = [&](int wpow, const DiffPoly& p) {
            // numerator times v_x^(clear - den), as a plain polynomial
            int d = p.data().den.empty() ? 0 : p.data().den[0];
            int extra = clear_pow[wpow] - d;
            PolyData stripped;
            stripped.num = p.data().num;
            DiffPoly q(ctx, std::move(stripped));
            if (extra > 0) q = q * DiffPoly::den_atom(ctx, 0).pow(extra);
            if (!q.data().den_trivial())
                raise(ErrorKind::InternalConsistency, "loop solver: clearing failed");
            return q;
        };

        LinearSystem sys;
        for (int t = 0; t < ncols; ++t)
            for (const auto& [wpow, c] : contrib[t]) {
                DiffPoly q = cleared_terms(wpow, c);
                for (const auto& [m, coef] : q.data().num) row_coefs[{wpow, m}][t] += coef;
            }
        for (const auto& [wpow, c] : rhs_by_w) {
            DiffPoly q = cleared_terms(wpow, c);
            for (const auto& [m, coef] : q.data().num) row_rhs[{wpow, m}] += coef;
        }
        std::set<std::pair<int, Monomial>, decltype([](const auto& a, const auto& b) {
                     if (a.first != b.first) return a.first < b.first;
                     return Monomial::cmp(a.second, b.second) < 0;
                 })>
            keys;
        for (const auto& [k, v] : row_coefs) {
            (void)v;
            keys.insert(k);
        }
        for (const auto& [k, v] : row_rhs) {
            (void)v;
            keys.insert(k);
        }
        for (const auto& key : keys) {
            std::map<int, Rat> row;
            auto it = row_coefs.find(key);
            if (it != row_coefs.end()) row = it->second;
            Rat r(0);
            auto jt = row_rhs.find(key);
            if (jt != row_rhs.end()) r = jt->second;
            sys.add_row(std::move(row), r);
        }

        std::vector<int> degenerate;
        auto sol = sys.solve(ncols, degenerate);
        if (!sol) {
            last_failure = "inconsistent linear system with jet degree cap " +
                           std::to_string(deg_cap) + ", v_x cap base " + std::to_string(den_base);
            deg_cap *= 2;
            den_base *= 2;
            continue;
        }

        std::vector<DiffPoly> grad(kmax + 1, DiffPoly::zero(ctx));
        for (int t = 0; t < ncols; ++t) {
            if ((*sol)[t].is_zero()) continue;
            PolyData monod;
            monod.num.emplace(ansatz[t].mono, (*sol)[t]);
            grad[ansatz[t].k] += DiffPoly(ctx, std::move(monod)) *
                                 DiffPoly::inv_atom(ctx, 0, ansatz[t].mden);
        }

        // closedness certificate before integration
        for (int k = 0; k <= kmax; ++k)
            for (int l = k + 1; l <= kmax; ++l)
                if (grad[k].partial(0, l) != grad[l].partial(0, k))
                    raise(ErrorKind::InternalConsistency,
                          "solve_genus: non-closed gradient (components " + std::to_string(k) +
                              ", " + std::to_string(l) + ")");
        return grad;
    }
    raise(ErrorKind::SolverFailure, "solve_genus: " + last_failure);
}

DiffPoly solve_genus(JetContextPtr ctx, int g, const std::vector<DiffPoly>& prior,
                     const SolveGenusOptions& opt) {
    auto grad = solve_genus_gradient(ctx, g, prior, opt);
    int kmax = 3 * g - 2;
    DiffPoly F(ctx);
    if (g == 1) {
        // gradient (0, c/v_x): integrate to c log v_x
        DiffPoly c = grad[1] * DiffPoly::den_atom(ctx, 0);
        if (!c.is_constant())
            raise(ErrorKind::InternalConsistency, "solve_genus: unexpected genus-1 gradient");
        if (!ctx->den_atom(0).has_log)
            raise(ErrorKind::Precondition, "solve_genus: log atom on v_x required");
        F = DiffPoly::log_atom(ctx, 0) * c.constant_term();
    } else {
        // Euler integration: F = (1/(2g-2)) sum_k k v^(k) dF/dv^(k)
        for (int k = 1; k <= kmax; ++k) F += Rat(k) * DiffPoly::jet(ctx, 0, k) * grad[k];
        F *= Rat(1, 2 * g - 2);
    }
    // gradient certificate
    for (int k = 0; k <= kmax; ++k)
        if (F.partial(0, k) != grad[k])
            raise(ErrorKind::InternalConsistency, "solve_genus: integration certificate failed");
    return F;
}

}  // namespace tophier
