#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "tophier/monomial.hpp"

namespace tophier {

class DiffPoly;

/// Declares the generators of a jet algebra: the field components and the
/// localization/exponential/logarithm atoms the expressions may use.
/// Contexts are set up once, then treated as immutable.
class JetContext : public std::enable_shared_from_this<JetContext> {
public:
    struct ExpAtom {
        std::string label;
        PolyData arg;       // polynomial in jets and earlier exp atoms
        PolyData dx_arg;    // its total x-derivative
        std::set<std::int32_t> jet_closure;
    };
    struct DenAtom {
        std::string label;
        PolyData poly;      // polynomial in jets and exp atoms
        PolyData dx_poly;
        long long grade;    // jet grade (validated homogeneous)
        bool is_monomial;   // single-term atom (enables per-term cancellation)
        std::set<std::int32_t> jet_closure;
        bool has_log = false;
    };

    static std::shared_ptr<JetContext> create(std::vector<std::string> comp_labels);

    int ncomp() const { return static_cast<int>(comp_labels_.size()); }
    const std::string& comp_label(int alpha) const { return comp_labels_[alpha]; }
    int comp_index(const std::string& label) const;

    int declare_exp_atom(const std::string& label, const DiffPoly& argument);
    int declare_den_atom(const std::string& label, const DiffPoly& poly);
    int declare_log_atom(const std::string& den_label);

    int n_exp_atoms() const { return static_cast<int>(exp_atoms_.size()); }
    int n_den_atoms() const { return static_cast<int>(den_atoms_.size()); }
    const ExpAtom& exp_atom(int i) const { return exp_atoms_[i]; }
    const DenAtom& den_atom(int i) const { return den_atoms_[i]; }

    int exp_atom_index(const std::string& label) const;  // -1 if absent
    int den_atom_index(const std::string& label) const;

    /// Structural compatibility: same component count and atom layout.
    /// Labels may differ (e.g. a v-side and a u-side view of one algebra).
    bool compatible_with(const JetContext& other) const;

private:
    JetContext() = default;

    std::vector<std::string> comp_labels_;
    std::vector<ExpAtom> exp_atoms_;
    std::vector<DenAtom> den_atoms_;
};

using JetContextPtr = std::shared_ptr<const JetContext>;

}  // namespace tophier
