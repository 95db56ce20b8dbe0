#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tophier/rational.hpp"

namespace tophier {

/// Variable id space shared by all polynomial generators:
///   jets      id = (k << 8) | alpha        (alpha < 256, k < 2^20)
///   exp atoms id = kExpBase + index
///   log atoms id = kLogBase + den-atom-index
/// Denominator atoms are not monomial variables; they live in the
/// denominator exponent vector of PolyData.
struct Monomial {
    using Factor = std::pair<std::int32_t, std::int32_t>;  // (id, exponent)

    static constexpr std::int32_t kExpBase = 1 << 28;
    static constexpr std::int32_t kLogBase = 1 << 29;

    static bool is_jet(std::int32_t id) { return id < kExpBase; }
    static bool is_exp(std::int32_t id) { return id >= kExpBase && id < kLogBase; }
    static bool is_log(std::int32_t id) { return id >= kLogBase; }
    static int jet_order(std::int32_t id) { return id >> 8; }
    static int jet_comp(std::int32_t id) { return id & 0xff; }
    static std::int32_t jet_id(int comp, int k) {
        return (static_cast<std::int32_t>(k) << 8) | comp;
    }
    static std::int32_t exp_id(int i) { return kExpBase + i; }
    static std::int32_t log_id(int i) { return kLogBase + i; }

    /// Factors sorted by id, exponents nonzero. Jet and log exponents are
    /// positive; exp-atom exponents may be negative (units).
    std::vector<Factor> f;

    bool empty() const { return f.empty(); }

    /// Sum of k * exponent over jet factors; exp and log atoms count 0.
    long long jet_grade() const {
        long long g = 0;
        for (const auto& [id, e] : f)
            if (is_jet(id)) g += static_cast<long long>(jet_order(id)) * e;
        return g;
    }

    /// Total polynomial degree over jet factors (each jet counts 1 per power).
    long long jet_degree() const {
        long long g = 0;
        for (const auto& [id, e] : f)
            if (is_jet(id)) g += e;
        return g;
    }

    int exponent(std::int32_t id) const {
        for (const auto& [vid, e] : f)
            if (vid == id) return e;
        return 0;
    }

    int max_jet_order() const {
        int m = -1;
        for (const auto& [id, e] : f) {
            (void)e;
            if (is_jet(id)) m = std::max(m, jet_order(id));
        }
        return m;
    }

    Monomial& mul_var(std::int32_t id, std::int32_t e);
    friend Monomial operator*(const Monomial& a, const Monomial& b);

    /// a / b, or nullopt when a jet/log exponent would go negative.
    static std::optional<Monomial> try_div(const Monomial& a, const Monomial& b);

    /// Graded order: jet grade first, then classic lex on exponent vectors
    /// (merge by ascending id; first differing exponent, larger wins).
    static int cmp(const Monomial& a, const Monomial& b);

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.f == b.f; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
};

struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return Monomial::cmp(a, b) < 0;
    }
};

/// Raw term/denominator storage, context-free. Denominator exponents are
/// indexed by declared denominator atom; missing trailing entries mean zero.
struct PolyData {
    std::map<Monomial, Rat, MonoLess> num;
    std::vector<std::int32_t> den;

    bool is_zero() const { return num.empty(); }
    bool den_trivial() const {
        for (int e : den)
            if (e != 0) return false;
        return true;
    }
    void add_term(const Monomial& m, const Rat& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = num.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) num.erase(it);
        }
    }
    friend bool operator==(const PolyData& a, const PolyData& b);
};

}  // namespace tophier
