#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "tophier/jet_context.hpp"

namespace tophier {

/// Exact-rational differential polynomial in jet variables, localized at the
/// context's declared denominator atoms, with exponential and logarithm
/// generators. Canonical form: a reduced common denominator (the numerator is
/// not divisible by any atom carried with positive exponent) over canonically
/// ordered terms, so equality is term-wise and serialization deterministic.
class DiffPoly {
public:
    DiffPoly() = default;
    explicit DiffPoly(JetContextPtr ctx) : ctx_(std::move(ctx)) {}
    DiffPoly(JetContextPtr ctx, PolyData data);

    static DiffPoly zero(JetContextPtr ctx) { return DiffPoly(std::move(ctx)); }
    static DiffPoly constant(JetContextPtr ctx, const Rat& c);
    static DiffPoly jet(JetContextPtr ctx, int comp, int order);
    static DiffPoly exp_atom(JetContextPtr ctx, int index, int power = 1);
    static DiffPoly log_atom(JetContextPtr ctx, int den_index);
    static DiffPoly inv_atom(JetContextPtr ctx, int den_index, int power = 1);
    static DiffPoly den_atom(JetContextPtr ctx, int den_index);

    /// Parses the canonical text syntax (see str()); also accepts
    /// parentheses, '-' and '/' by rational literals.
    static DiffPoly parse(JetContextPtr ctx, std::string_view text);

    const JetContextPtr& ctx() const { return ctx_; }
    const PolyData& data() const { return d_; }

    bool is_zero() const { return d_.num.empty(); }
    bool is_constant() const;
    Rat constant_term() const;

    /// True when the expression is a polynomial in jets and exp atoms:
    /// no denominator powers, no log atoms, no negative exp powers.
    bool is_jet_polynomial() const;
    bool has_log_atoms() const;
    bool has_denominators() const { return !d_.den_trivial(); }

    int max_jet_order() const;
    std::size_t term_count() const { return d_.num.size(); }

    /// Jets the value genuinely depends on, including jets hidden inside
    /// atom arguments.
    std::set<std::int32_t> occurring_jets() const;

    DiffPoly operator-() const;
    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    DiffPoly& operator*=(const DiffPoly& o);
    DiffPoly& operator*=(const Rat& c);
    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { a += b; return a; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { a -= b; return a; }
    friend DiffPoly operator*(DiffPoly a, const DiffPoly& b) { a *= b; return a; }
    friend DiffPoly operator*(DiffPoly a, const Rat& c) { a *= c; return a; }
    friend DiffPoly operator*(const Rat& c, DiffPoly a) { a *= c; return a; }

    DiffPoly pow(int e) const;  // e >= 0, or e < 0 for invertible monomials

    friend bool operator==(const DiffPoly& a, const DiffPoly& b);
    friend bool operator!=(const DiffPoly& a, const DiffPoly& b) { return !(a == b); }

    /// Total x-derivative (Leibniz over jets plus the declared atom rules).
    DiffPoly dx() const;
    DiffPoly dx(int times) const;

    /// Partial derivative with respect to the jet v^{comp,(order)}, applying
    /// the chain rule through atom arguments.
    DiffPoly partial(int comp, int order) const;

    /// Euler-Lagrange operator sum_k (-dx)^k d/dv^{comp,(k)}.
    /// Rejects expressions carrying log atoms.
    DiffPoly var_derivative(int comp) const;

    struct GradeReport {
        bool homogeneous = true;
        long long grade = 0;              // meaningful when homogeneous
        std::set<long long> grades_seen;  // all grades present
    };
    /// Graded degree under v^(k) -> lambda^k v^(k); denominator atoms count
    /// negatively by their own grade, exp/log atoms count zero.
    GradeReport grade() const;

    /// Exact polynomial division; nullopt when the division does not come
    /// out even. Both operands must have trivial denominators.
    static std::optional<DiffPoly> try_divide_exact(const DiffPoly& a, const DiffPoly& b);

    /// a / b as an element of the localized ring: multiplies a by declared
    /// atom powers until b divides exactly. nullopt when no representation
    /// with atom-power denominators <= max_extra exists.
    static std::optional<DiffPoly> divide_with_atoms(const DiffPoly& a, const DiffPoly& b,
                                                     int max_extra = 6);

    /// Canonical text form. Terms in descending canonical order; for single-
    /// monomial denominator atoms, powers that cancel into a term are shown
    /// cancelled.
    std::string str() const;

    /// Same value over a structurally compatible context (relabeled view).
    DiffPoly rebased(JetContextPtr other) const;

    /// Sets every positive power of the given exp atom to zero and drops it;
    /// negative powers of it are an error.
    DiffPoly limit_exp_atom_zero(int exp_index) const;

private:
    void reduce();
    JetContextPtr ctx_;
    PolyData d_;

    friend class PolyOps;
};

}  // namespace tophier
