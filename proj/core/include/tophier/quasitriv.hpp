#pragma once

#include "tophier/substitute.hpp"

namespace tophier {

/// Evolutionary derivation attached to per-field right-hand sides:
/// D(p) = sum_{alpha,k} dx^k(rhs_alpha) dp/dv^{alpha,k}.
EpsSeries flow_derivative(const std::vector<EpsSeries>& rhs, const DiffPoly& p, int E);
EpsSeries flow_derivative(const std::vector<EpsSeries>& rhs, const EpsSeries& p, int E);

/// The substitution u = v + eps^2 dx^2(DeltaF) of the one-field chain.
JetMap kdv_substitution(const EpsSeries& delta_f, int E);

/// Image of a dispersionless flow under a near-identity map, re-expressed in
/// the new dependent variables. The overload without `inverse` inverts
/// internally.
std::vector<EpsSeries> transform_flow(const std::vector<DiffPoly>& flow, const JetMap& map,
                                      const JetMap& inverse, int E);
std::vector<EpsSeries> transform_flow(const std::vector<DiffPoly>& flow, const JetMap& map,
                                      int E);

/// One-field convenience: dispersionless rhs in v, substitution from DeltaF.
EpsSeries transform_flow_kdv(const DiffPoly& flow, const EpsSeries& delta_f, int E);

/// Tau-symmetric density h_i = (v^{i+2}/(i+2)!)|_sub + eps^2 d_x d_{t_{i+1}} DeltaF,
/// expressed in the new variables; polynomial at every computed order.
EpsSeries tau_density(int i, int E, const EpsSeries& delta_f);

/// Two densities agree modulo im(d_x) iff their difference has zero
/// variational derivative in every component and zero constant term.
bool equal_mod_dx(const DiffPoly& a, const DiffPoly& b);
bool equal_mod_dx(const EpsSeries& a, const EpsSeries& b, int E);

}  // namespace tophier
