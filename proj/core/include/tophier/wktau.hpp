#pragma once

#include <string>
#include <vector>

#include "tophier/tseries.hpp"

namespace tophier {

/// Topological solutions and tau-function checks for the one-point target:
/// series live in variables t_0 .. t_P.

/// Fixed point of v = sum_p t_p v^p / p!, truncated at total degree D.
TSeries wk_vtop(int D, int P);

/// Genus-0 potential: sum_{n>=3} 1/(n(n-1)(n-2)) sum_{p_1+..+p_n=n-3} prod t_{p_i}/p_i!.
TSeries wk_f0(int D, int P);

/// Genus-1 potential (1/24) log d_{t_0} v_top.
TSeries wk_f1(int D, int P);

/// A jet expression (e.g. the genus-2 free energy) evaluated at v_top jets,
/// where d_x = d_{t_0}.
TSeries wk_eval_at_vtop(const DiffPoly& jet_expr, int D, int P);

/// Intersection numbers out of the generating series: coefficient times the
/// product of multiplicities factorials.
Rat series_intersection(const TSeries& f, const std::vector<int>& spec);

/// <tau_{p_1}..tau_{p_n}>_0; zero (with note) off the dimension constraint.
Rat wk_intersect_genus0(const std::vector<int>& spec, std::string* note = nullptr);
Rat wk_intersect_genus1(const std::vector<int>& spec);

enum class HodgeClass { Lambda1, Lambda2 };
/// Genus-2 Hodge integrals: lambda_1 by jet evaluation of the displayed
/// series, lambda_2 by the closed form (7/5760)(n+1)!/(k_1!..k_n!).
Rat wk_genus2_lambda(const std::vector<int>& spec, HodgeClass which);

struct VirasoroReport {
    bool pass = true;
    int checked_coefficients = 0;
    std::vector<std::string> violations;  // "m=.. eps=.. monomial=..: value"
    std::vector<std::string> notes;
};

/// Applies the KdV Virasoro operators to the truncated tau expansion
/// exp(eps^-2 F0 + F1 + eps^2 F2) and verifies L_m tau = ((2m+3)!!/2^{m+1})
/// d_{m+1} tau coefficient-wise inside the computed safe window.
/// f2_jets is the genus-2 free energy as a jet expression.
VirasoroReport wk_virasoro_check(int m_max, int D, int E, const DiffPoly& f2_jets);

}  // namespace tophier
