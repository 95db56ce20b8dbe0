#pragma once

#include <vector>

#include "tophier/eps_series.hpp"

namespace tophier {

/// Near-identity change of dependent variables: the image of each field as
/// an eps^2-series whose eps^0 part is the field itself. Images are given in
/// contravariant components (the jet variables being replaced).
struct JetMap {
    JetContextPtr ctx;
    std::vector<EpsSeries> comp;
    int trunc = EpsSeries::kExact;

    static JetMap identity(JetContextPtr ctx, int trunc = EpsSeries::kExact);
    void validate_near_identity() const;
};

/// expr with every jet v^{alpha,k} replaced by dx^k(map(alpha)), expanded and
/// truncated at eps^E. Denominator atoms are re-expanded by geometric series
/// around the eps^0 part; exp and log atoms by their exp/log series.
EpsSeries substitute(const DiffPoly& expr, const JetMap& map, int E);
EpsSeries substitute(const EpsSeries& expr, const JetMap& map, int E);

/// The inverse near-identity map through eps^E (formal Neumann iteration).
JetMap invert_near_identity(const JetMap& map, int E);

}  // namespace tophier
