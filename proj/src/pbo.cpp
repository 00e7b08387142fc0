#include "motifq/pbo.hpp"

#include "motifq/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>

namespace motifq {

// --- VariableMap -------------------------------------------------------------

VariableMap VariableMap::identity(std::size_t edge_count) {
    std::vector<EdgeId> ids(edge_count);
    for (std::size_t i = 0; i < edge_count; ++i) ids[i] = static_cast<EdgeId>(i);
    return VariableMap(std::move(ids));
}

VariableMap::VariableMap(std::vector<EdgeId> var_to_edge) : var_to_edge_(std::move(var_to_edge)) {
    for (std::uint32_t v = 0; v < var_to_edge_.size(); ++v) {
        if (!edge_to_var_.emplace(var_to_edge_[v], v).second) throw InvalidGraph("variable map is not injective");
    }
}

std::optional<std::uint32_t> VariableMap::var_of(EdgeId e) const {
    auto it = edge_to_var_.find(e);
    if (it == edge_to_var_.end()) return std::nullopt;
    return it->second;
}

// --- PseudoBooleanPolynomial -------------------------------------------------

PseudoBooleanPolynomial PseudoBooleanPolynomial::variable(std::size_t r, std::uint32_t var) {
    PseudoBooleanPolynomial p(r);
    p.add_term({var}, 1.0);
    return p;
}

PseudoBooleanPolynomial PseudoBooleanPolynomial::constant_poly(std::size_t r, double c) {
    PseudoBooleanPolynomial p(r);
    p.add_constant(c);
    return p;
}

std::size_t PseudoBooleanPolynomial::degree() const {
    std::size_t d = 0;
    for (const auto& [vars, coef] : terms_) d = std::max(d, vars.size());
    return d;
}

void PseudoBooleanPolynomial::add_term(Monomial vars, double coef) {
    if (coef == 0.0) return;
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    if (vars.empty()) {
        constant_ += coef;
        return;
    }
    if (vars.back() >= r_) throw LengthMismatch(r_, vars.back() + 1);
    auto [it, inserted] = terms_.emplace(std::move(vars), coef);
    if (!inserted) {
        it->second += coef;
        if (it->second == 0.0) terms_.erase(it);
    }
}

PseudoBooleanPolynomial& PseudoBooleanPolynomial::operator+=(const PseudoBooleanPolynomial& other) {
    r_ = std::max(r_, other.r_);
    for (const auto& [vars, coef] : other.terms_) add_term(vars, coef);
    constant_ += other.constant_;
    return *this;
}

PseudoBooleanPolynomial& PseudoBooleanPolynomial::operator-=(const PseudoBooleanPolynomial& other) {
    r_ = std::max(r_, other.r_);
    for (const auto& [vars, coef] : other.terms_) add_term(vars, -coef);
    constant_ -= other.constant_;
    return *this;
}

PseudoBooleanPolynomial& PseudoBooleanPolynomial::operator*=(double s) {
    if (s == 0.0) {
        terms_.clear();
        constant_ = 0.0;
        return *this;
    }
    for (auto& [vars, coef] : terms_) coef *= s;
    constant_ *= s;
    return *this;
}

PseudoBooleanPolynomial operator*(const PseudoBooleanPolynomial& a, const PseudoBooleanPolynomial& b) {
    PseudoBooleanPolynomial out(std::max(a.r_, b.r_));
    out.constant_ = a.constant_ * b.constant_;
    if (a.constant_ != 0.0) {
        for (const auto& [vars, coef] : b.terms_) out.add_term(vars, coef * a.constant_);
    }
    if (b.constant_ != 0.0) {
        for (const auto& [vars, coef] : a.terms_) out.add_term(vars, coef * b.constant_);
    }
    PseudoBooleanPolynomial::Monomial merged;
    for (const auto& [va, ca] : a.terms_) {
        for (const auto& [vb, cb] : b.terms_) {
            merged.clear();
            std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(merged));
            out.add_term(merged, ca * cb);
        }
    }
    return out;
}

double PseudoBooleanPolynomial::evaluate(std::span<const std::uint8_t> assignment) const {
    if (assignment.size() != r_) throw LengthMismatch(r_, assignment.size());
    double total = constant_;
    for (const auto& [vars, coef] : terms_) {
        if (std::all_of(vars.begin(), vars.end(), [&](std::uint32_t v) { return assignment[v] != 0; })) total += coef;
    }
    return total;
}

double PseudoBooleanPolynomial::evaluate_mask(std::uint64_t mask) const {
    double total = constant_;
    for (const auto& [vars, coef] : terms_) {
        if (std::all_of(vars.begin(), vars.end(), [&](std::uint32_t v) { return (mask >> v) & 1U; })) total += coef;
    }
    return total;
}

void PseudoBooleanPolynomial::dump(std::ostream& out) const {
    char buf[64];
    for (const auto& [vars, coef] : terms_) {
        std::snprintf(buf, sizeof buf, "%.17g", coef);
        out << buf << '\t';
        for (std::size_t i = 0; i < vars.size(); ++i) out << (i ? "," : "") << vars[i];
        out << '\n';
    }
    std::snprintf(buf, sizeof buf, "%.17g", constant_);
    out << "C\t" << buf << '\n';
}

double evaluate(const PseudoBooleanPolynomial& poly, std::span<const std::uint8_t> assignment) {
    return poly.evaluate(assignment);
}

// --- h polynomials -----------------------------------------------------------

namespace {

/// Edge sets (with multiplicity) hosting the motif through one anchor.
using WitnessList = std::vector<std::pair<std::vector<EdgeId>, int>>;

WitnessList anchor_witnesses(const RegulatoryNetwork& net, const MotifPattern& motif, EdgeId anchor,
                             const std::vector<NodeId>& excluded_nodes, HMode mode, const MatchOptions& opts) {
    if (anchor >= net.edge_count()) throw UnknownEdge(anchor);
    const auto& a = net.edge(anchor);
    std::set<NodeId> banned(excluded_nodes.begin(), excluded_nodes.end());

    MappingConstraints c;
    if (!banned.empty()) c.node_allowed = [&](NodeId v) { return banned.count(v) == 0; };

    std::map<std::vector<EdgeId>, int> acc;
    auto collect = [&](std::span<const NodeId>, std::span<const EdgeId> edges) {
        std::vector<EdgeId> key(edges.begin(), edges.end());
        std::sort(key.begin(), key.end());
        ++acc[key];
    };

    if (mode == HMode::Anchored) {
        if (!motif.find_edge(0, 1)) throw InvalidGraph("anchored mode needs a canonical motif with edge 1 -> 2");
        c.pinned = {{0, a.src}, {1, a.dst}};
        for_each_mapping(net, motif, opts, c, collect);
    } else {
        for (const auto& me : motif.edges()) {
            c.pinned = {{me.a, a.src}, {me.b, a.dst}};
            for_each_mapping(net, motif, opts, c, collect);
        }
        for (auto& [key, count] : acc) count = 1;
    }
    return WitnessList(acc.begin(), acc.end());
}

PseudoBooleanPolynomial witnesses_to_poly(std::size_t r, const WitnessList& witnesses,
                                          std::optional<EdgeId> excluded_edge) {
    PseudoBooleanPolynomial p(r);
    for (const auto& [edges, count] : witnesses) {
        if (excluded_edge && std::binary_search(edges.begin(), edges.end(), *excluded_edge)) continue;
        p.add_term(PseudoBooleanPolynomial::Monomial(edges.begin(), edges.end()), static_cast<double>(count));
    }
    return p;
}

}  // namespace

PseudoBooleanPolynomial build_h_polynomial(const RegulatoryNetwork& net, const MotifPattern& motif, EdgeId anchor,
                                           const HExclusion& exclusion, HMode mode, const MatchOptions& opts) {
    auto witnesses = anchor_witnesses(net, motif, anchor, exclusion.nodes, mode, opts);
    return witnesses_to_poly(net.edge_count(), witnesses, exclusion.edge);
}

Penalties Penalties::defaults_for(std::size_t edge_count) {
    const double a = static_cast<double>(edge_count) + 1.0;
    return {a, a, a};
}

Objective assemble_objective(const RegulatoryNetwork& net, const MotifPattern& motif, const Penalties& penalties,
                             HMode mode, const MatchOptions& opts, std::size_t term_cap) {
    const std::size_t r = net.edge_count();
    Objective obj{PseudoBooleanPolynomial(r), PseudoBooleanPolynomial(r), PseudoBooleanPolynomial(r),
                  PseudoBooleanPolynomial(r), PseudoBooleanPolynomial(r), penalties, mode};
    auto check_cap = [&](const PseudoBooleanPolynomial& p) {
        if (p.term_count() > term_cap) throw PolynomialBlowup(term_cap);
    };

    std::vector<WitnessList> witnesses(r);
    for (EdgeId e = 0; e < r; ++e) witnesses[e] = anchor_witnesses(net, motif, e, {}, mode, opts);

    for (EdgeId e = 0; e < r; ++e) {
        const auto x = PseudoBooleanPolynomial::variable(r, e);
        obj.cost += x;
        const auto gap = x - witnesses_to_poly(r, witnesses[e], std::nullopt);
        obj.p1 += gap.squared();
        check_cap(obj.p1);
    }
    obj.p1 *= penalties.a1;

    // Ordered pairs of distinct edges sharing at least one endpoint.
    for (EdgeId e1 = 0; e1 < r; ++e1) {
        const auto& a = net.edge(e1);
        for (EdgeId e2 = 0; e2 < r; ++e2) {
            if (e1 == e2) continue;
            const auto& b = net.edge(e2);
            if (a.src != b.src && a.src != b.dst && a.dst != b.src && a.dst != b.dst) continue;
            auto sum = witnesses_to_poly(r, witnesses[e1], e2) + witnesses_to_poly(r, witnesses[e2], e1);
            if (sum.is_zero()) continue;
            auto term = PseudoBooleanPolynomial::variable(r, e1) * PseudoBooleanPolynomial::variable(r, e2);
            obj.p2 += term * sum.squared();
            check_cap(obj.p2);
        }
    }
    obj.p2 *= penalties.a2;

    // Variables exist only for network edges, so the non-edge penalty has no terms.
    obj.f = obj.p1 + obj.p2 + obj.p3 - obj.cost;
    check_cap(obj.f);
    return obj;
}

std::vector<double> objective_table(const PseudoBooleanPolynomial& poly, std::size_t r, std::size_t qubit_cap) {
    if (r > qubit_cap) throw QubitCapExceeded(r, qubit_cap);
    if (poly.variable_count() > r) throw LengthMismatch(r, poly.variable_count());
    const std::size_t size = std::size_t{1} << r;
    std::vector<double> table(size, 0.0);
    for (const auto& [vars, coef] : poly.terms()) {
        std::uint64_t mask = 0;
        for (auto v : vars) mask |= std::uint64_t{1} << v;
        table[mask] += coef;
    }
    // Subset-sum transform: table[b] = sum of coefficients of monomials inside b.
    for (std::size_t k = 0; k < r; ++k) {
        const std::size_t bit = std::size_t{1} << k;
        for (std::size_t b = 0; b < size; ++b) {
            if (b & bit) table[b] += table[b ^ bit];
        }
    }
    for (auto& v : table) v += poly.constant();
    return table;
}

std::vector<EdgeId> mask_to_edges(std::uint64_t mask, std::size_t r) {
    std::vector<EdgeId> out;
    for (std::size_t k = 0; k < r; ++k) {
        if ((mask >> k) & 1U) out.push_back(static_cast<EdgeId>(k));
    }
    return out;
}

std::uint64_t edges_to_mask(std::span<const EdgeId> edges) {
    std::uint64_t mask = 0;
    for (EdgeId e : edges) mask |= std::uint64_t{1} << e;
    return mask;
}

}  // namespace motifq
