#pragma once

#include "motifq/embedding.hpp"
#include "motifq/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace motifq {

/// Bijection between network edges and binary variables. Variable k is the
/// k-th edge of the (part) network, and bit k of a basis-state index.
class VariableMap {
public:
    static VariableMap identity(std::size_t edge_count);
    explicit VariableMap(std::vector<EdgeId> var_to_edge);

    std::size_t size() const { return var_to_edge_.size(); }
    EdgeId edge_of(std::uint32_t var) const { return var_to_edge_.at(var); }
    std::optional<std::uint32_t> var_of(EdgeId e) const;

private:
    std::vector<EdgeId> var_to_edge_;
    std::map<EdgeId, std::uint32_t> edge_to_var_;
};

/// Multilinear polynomial over r binary variables. Monomials are sorted,
/// duplicate-free variable lists (x*x is folded to x on insertion) and zero
/// coefficients are never stored.
class PseudoBooleanPolynomial {
public:
    using Monomial = std::vector<std::uint32_t>;

    explicit PseudoBooleanPolynomial(std::size_t variable_count = 0) : r_(variable_count) {}

    static PseudoBooleanPolynomial variable(std::size_t r, std::uint32_t var);
    static PseudoBooleanPolynomial constant_poly(std::size_t r, double c);

    std::size_t variable_count() const { return r_; }
    double constant() const { return constant_; }
    const std::map<Monomial, double>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty() && constant_ == 0.0; }
    std::size_t degree() const;

    void add_term(Monomial vars, double coef);
    void add_constant(double c) { constant_ += c; }

    PseudoBooleanPolynomial& operator+=(const PseudoBooleanPolynomial& other);
    PseudoBooleanPolynomial& operator-=(const PseudoBooleanPolynomial& other);
    PseudoBooleanPolynomial& operator*=(double s);
    friend PseudoBooleanPolynomial operator+(PseudoBooleanPolynomial a, const PseudoBooleanPolynomial& b) { return a += b; }
    friend PseudoBooleanPolynomial operator-(PseudoBooleanPolynomial a, const PseudoBooleanPolynomial& b) { return a -= b; }
    friend PseudoBooleanPolynomial operator*(PseudoBooleanPolynomial a, double s) { return a *= s; }
    friend PseudoBooleanPolynomial operator*(const PseudoBooleanPolynomial& a, const PseudoBooleanPolynomial& b);

    PseudoBooleanPolynomial squared() const { return *this * *this; }

    /// Value at a 0/1 assignment of length r. Throws LengthMismatch.
    double evaluate(std::span<const std::uint8_t> assignment) const;
    /// Value at the assignment encoded by the bits of `mask` (r <= 64).
    double evaluate_mask(std::uint64_t mask) const;

    /// Text dump: `coef<TAB>v1,v2,...` per term, then `C<TAB>constant`.
    void dump(std::ostream& out) const;

    friend bool operator==(const PseudoBooleanPolynomial&, const PseudoBooleanPolynomial&) = default;

private:
    std::size_t r_;
    std::map<Monomial, double> terms_;
    double constant_ = 0.0;
};

double evaluate(const PseudoBooleanPolynomial& poly, std::span<const std::uint8_t> assignment);

enum class HMode { Anchored, Orbit };

/// Which mappings an h-polynomial skips: any mapping touching one of
/// `nodes`, and any mapping whose edge set contains `edge`.
struct HExclusion {
    std::vector<NodeId> nodes;
    std::optional<EdgeId> edge;
};

/// Embedding-count polynomial for one anchor edge. Anchored mode places
/// motif edge 0 -> 1 on the anchor and counts each mapping once; orbit mode
/// lets any motif edge sit on the anchor and counts each distinct edge set
/// once. Throws UnknownEdge.
PseudoBooleanPolynomial build_h_polynomial(const RegulatoryNetwork& net, const MotifPattern& motif, EdgeId anchor,
                                           const HExclusion& exclusion, HMode mode, const MatchOptions& opts = {});

struct Penalties {
    double a1 = 1.0;
    double a2 = 1.0;
    double a3 = 1.0;

    /// |E| + 1 for every constant: one violated unit then outweighs the
    /// largest possible cost gain.
    static Penalties defaults_for(std::size_t edge_count);
};

/// f = -cost + p1 + p2 + p3, with each component kept for inspection.
struct Objective {
    PseudoBooleanPolynomial f;
    PseudoBooleanPolynomial cost;
    PseudoBooleanPolynomial p1;  // selected edge lies in exactly one selected embedding
    PseudoBooleanPolynomial p2;  // adjacent selected edges share their embedding
    PseudoBooleanPolynomial p3;  // non-edges unselected; structurally zero here
    Penalties penalties;
    HMode mode = HMode::Orbit;
};

inline constexpr std::size_t kDefaultTermCap = 200'000;

/// Compiles the motif identification instance into its unconstrained
/// objective. Throws PolynomialBlowup when the expanded form exceeds
/// `term_cap` terms.
Objective assemble_objective(const RegulatoryNetwork& net, const MotifPattern& motif, const Penalties& penalties,
                             HMode mode, const MatchOptions& opts = {}, std::size_t term_cap = kDefaultTermCap);

inline constexpr std::size_t kDefaultQubitCap = 20;

/// f evaluated on every basis state; entry b is f(bits of b), bit k being
/// variable k. Throws QubitCapExceeded.
std::vector<double> objective_table(const PseudoBooleanPolynomial& poly, std::size_t r,
                                    std::size_t qubit_cap = kDefaultQubitCap);

std::vector<EdgeId> mask_to_edges(std::uint64_t mask, std::size_t r);
std::uint64_t edges_to_mask(std::span<const EdgeId> edges);

}  // namespace motifq
