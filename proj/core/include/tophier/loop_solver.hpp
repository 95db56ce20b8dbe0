#pragma once

#include <vector>

#include "tophier/lambda_ext.hpp"

namespace tophier {

struct SolveGenusOptions {
    int retries = 2;          // geometric cap enlargement on inconsistency
    int jet_degree_cap = -1;  // monomial degree in v_xx..v^(3g-2); default 3g-3
    int den_cap_base = -1;    // v_x exponent <= base + 2 * (#higher-jet factors); default 2g
};

/// Gradient components dF_g/dv^(k), k = 0..3g-2, solving the genus-g loop
/// equation identically in w (dF_g/dv = 0 imposed).
std::vector<DiffPoly> solve_genus_gradient(JetContextPtr ctx, int g,
                                           const std::vector<DiffPoly>& prior,
                                           const SolveGenusOptions& opt = {});

/// F_g itself: the constant-free representative integrating the gradient.
/// prior holds F_1..F_{g-1} (empty for g = 1).
DiffPoly solve_genus(JetContextPtr ctx, int g, const std::vector<DiffPoly>& prior,
                     const SolveGenusOptions& opt = {});

}  // namespace tophier
