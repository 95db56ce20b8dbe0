#pragma once

#include <string>
#include <vector>

#include "tophier/rational.hpp"

namespace tophier {

using CohVec = std::vector<Rat>;

/// Finite graded Frobenius algebra data: basis, grading, Poincare pairing,
/// cup structure constants, Chern vectors, Euler characteristic. Validated
/// on construction; every axiom violation is reported by name.
class CohomologyRing {
public:
    std::string name;
    int d = 0;                          // complex dimension
    std::vector<std::string> basis;     // labels, gamma_1 = unit first
    std::vector<int> deg;               // q_alpha
    std::vector<std::vector<Rat>> eta;  // Gram matrix
    std::vector<std::vector<std::vector<Rat>>> cup;  // c[a][b][c]
    CohVec c1, cdm1, cd;                // Chern vectors of T_X
    long chi = 0;

    // derived on validate()
    std::vector<std::vector<Rat>> eta_inv;

    int n() const { return static_cast<int>(basis.size()); }

    /// mu eigenvalue q_alpha - d/2.
    Rat mu(int alpha) const { return Rat(deg[alpha]) - Rat(d, 2); }

    Rat pairing(const CohVec& a, const CohVec& b) const;
    CohVec cup_vec(const CohVec& a, const CohVec& b) const;
    CohVec unit_vec() const;
    CohVec basis_vec(int alpha) const;
    CohVec dual_basis_vec(int alpha) const;  // gamma^alpha = eta^{alpha beta} gamma_beta
    Rat integral(const CohVec& a) const;     // pairing with the unit

    /// Throws ValidationError naming the violated axiom.
    void validate() const;

    struct ChernReport {
        Rat lhs, rhs;
        bool pass = false;
    };
    /// lhs = int c_1 cup c_{d-1}; rhs = (3/2) tr deg^2 - (chi/2) d (3d+1)
    /// with tr deg^2 = sum (2 q_alpha)^2.
    ChernReport chern_check() const;

    static CohomologyRing projective(int dim);
    static CohomologyRing k3();
    static CohomologyRing from_file(const std::string& path);
    /// "pn:<d>", "k3", or a file path.
    static CohomologyRing load(const std::string& source);
};

}  // namespace tophier
