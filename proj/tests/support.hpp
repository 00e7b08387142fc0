#pragma once

// Shared helpers for the test binaries. The oracles here deliberately avoid
// the library's search code: they work from raw edge lists and brute force.

#include "motifq/classical.hpp"
#include "motifq/embedding.hpp"
#include "motifq/graph.hpp"
#include "motifq/pbo.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace testsupport {

using namespace motifq;

using EdgeSet = std::vector<EdgeId>;

inline std::string vname(std::size_t i) {
    const auto digits = std::to_string(i);
    return "v" + std::string(digits.size() < 2 ? 2 - digits.size() : 0, '0') + digits;
}

/// Network from "src dst code" triples.
inline RegulatoryNetwork net_of(const std::vector<std::tuple<std::string, std::string, char>>& triples,
                                std::string name = "t") {
    std::vector<NamedEdge> edges;
    for (const auto& [s, d, c] : triples) edges.push_back({s, d, *relation_from_code(std::string(1, c))});
    return RegulatoryNetwork::from_named_edges(std::move(name), edges, {});
}

/// Uniform random simple digraph on n nodes with m edges.
inline RegulatoryNetwork random_network(std::size_t n, std::size_t m, std::uint64_t seed, double p_repress = 0.5,
                                        double p_unknown = 0.0) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<std::size_t> node(0, n - 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<NamedEdge> edges;
    m = std::min(m, n * (n - 1));
    while (edges.size() < m) {
        auto a = node(gen), b = node(gen);
        if (a == b || !seen.emplace(a, b).second) continue;
        const double x = u(gen);
        Relation rel = x < p_unknown ? Relation::Unknown : x < p_unknown + p_repress ? Relation::Repression
                                                                                      : Relation::Activation;
        edges.push_back({vname(a), vname(b), rel});
    }
    std::vector<std::string> all;
    for (std::size_t i = 0; i < n; ++i) all.push_back(vname(i));
    return RegulatoryNetwork::from_named_edges("rand" + std::to_string(seed), edges, all);
}

/// Copies of `motif` on fresh nodes, each copy offset by `stride` node names,
/// optionally sharing nodes when copies overlap, plus random noise edges.
inline RegulatoryNetwork planted_network(const MotifPattern& motif, const std::vector<std::vector<std::size_t>>& hosts,
                                         std::size_t n, std::size_t noise, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<std::size_t> node(0, n - 1);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<NamedEdge> edges;
    for (const auto& h : hosts) {
        for (const auto& e : motif.edges()) {
            if (seen.emplace(h[e.a], h[e.b]).second) edges.push_back({vname(h[e.a]), vname(h[e.b]), e.rel});
        }
    }
    std::size_t added = 0;
    for (std::size_t tries = 0; added < noise && tries < 1000; ++tries) {
        auto a = node(gen), b = node(gen);
        if (a == b || seen.count({a, b}) || seen.count({b, a})) continue;
        seen.emplace(a, b);
        edges.push_back({vname(a), vname(b), gen() % 2 ? Relation::Activation : Relation::Repression});
        ++added;
    }
    std::vector<std::string> all;
    for (std::size_t i = 0; i < n; ++i) all.push_back(vname(i));
    return RegulatoryNetwork::from_named_edges("planted" + std::to_string(seed), edges, all);
}

// --- naive isomorphism oracle -------------------------------------------------

inline std::map<std::pair<NodeId, NodeId>, EdgeId> edge_lookup(const RegulatoryNetwork& net) {
    std::map<std::pair<NodeId, NodeId>, EdgeId> out;
    for (EdgeId e = 0; e < net.edge_count(); ++e) out[{net.edge(e).src, net.edge(e).dst}] = e;
    return out;
}

inline bool label_ok(Relation net_rel, Relation motif_rel, bool wildcard) {
    if (net_rel == motif_rel) return true;
    return wildcard && net_rel == Relation::Unknown;
}

/// True when the edge-induced graph of `edges` is label-isomorphic to the motif.
inline bool is_embedding(const RegulatoryNetwork& net, const MotifPattern& motif, const EdgeSet& edges,
                         bool wildcard = false) {
    if (edges.size() != motif.edge_count()) return false;
    std::vector<NodeId> nodes;
    for (EdgeId e : edges) {
        nodes.push_back(net.edge(e).src);
        nodes.push_back(net.edge(e).dst);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    if (nodes.size() != motif.size()) return false;
    std::map<std::pair<NodeId, NodeId>, Relation> present;
    for (EdgeId e : edges) present[{net.edge(e).src, net.edge(e).dst}] = net.edge(e).rel;
    std::vector<std::size_t> perm(nodes.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    do {
        bool ok = true;
        for (const auto& me : motif.edges()) {
            auto it = present.find({nodes[perm[me.a]], nodes[perm[me.b]]});
            if (it == present.end() || !label_ok(it->second, me.rel, wildcard)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Every embedding edge set, found by trying all injective node maps.
inline std::set<EdgeSet> brute_embeddings(const RegulatoryNetwork& net, const MotifPattern& motif,
                                          bool wildcard = false) {
    const auto lookup = edge_lookup(net);
    std::set<EdgeSet> out;
    std::vector<NodeId> map(motif.size());
    std::vector<bool> used(net.node_count(), false);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == motif.size()) {
            EdgeSet es;
            for (const auto& me : motif.edges()) {
                auto it = lookup.find({map[me.a], map[me.b]});
                if (it == lookup.end() || !label_ok(net.edge(it->second).rel, me.rel, wildcard)) return;
                es.push_back(it->second);
            }
            std::sort(es.begin(), es.end());
            out.insert(es);
            return;
        }
        for (NodeId v = 0; v < net.node_count(); ++v) {
            if (used[v]) continue;
            used[v] = true;
            map[k] = v;
            rec(k + 1);
            used[v] = false;
        }
    };
    rec(0);
    return out;
}

inline std::set<NodeId> nodes_of(const RegulatoryNetwork& net, const EdgeSet& edges) {
    std::set<NodeId> s;
    for (EdgeId e : edges) {
        s.insert(net.edge(e).src);
        s.insert(net.edge(e).dst);
    }
    return s;
}

/// Tries every split of `subset` into motif-sized groups; accepts when each
/// group is an embedding and groups are pairwise node-disjoint.
inline bool brute_partition(const RegulatoryNetwork& net, const MotifPattern& motif, const EdgeSet& subset,
                            bool wildcard = false) {
    const std::size_t k = motif.edge_count();
    if (subset.size() % k != 0) return false;
    std::function<bool(std::vector<EdgeId>, std::set<NodeId>)> rec = [&](std::vector<EdgeId> rest,
                                                                       std::set<NodeId> used) -> bool {
        if (rest.empty()) return true;
        const EdgeId first = rest.front();
        std::vector<EdgeId> others(rest.begin() + 1, rest.end());
        std::vector<bool> pick(others.size(), false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k - 1), true);
        do {
            EdgeSet group{first};
            std::vector<EdgeId> remaining;
            for (std::size_t i = 0; i < others.size(); ++i) (pick[i] ? group : remaining).push_back(others[i]);
            std::sort(group.begin(), group.end());
            if (!is_embedding(net, motif, group, wildcard)) continue;
            auto ns = nodes_of(net, group);
            bool disjoint = std::none_of(ns.begin(), ns.end(), [&](NodeId v) { return used.count(v) > 0; });
            if (!disjoint) continue;
            auto next_used = used;
            next_used.insert(ns.begin(), ns.end());
            if (rec(remaining, next_used)) return true;
        } while (std::prev_permutation(pick.begin(), pick.end()));
        return false;
    };
    return rec(subset, {});
}

inline EdgeSet mask_edges(std::uint64_t mask) {
    EdgeSet out;
    for (EdgeId e = 0; mask >> e; ++e) {
        if ((mask >> e) & 1) out.push_back(e);
    }
    return out;
}

// --- maximum independent set by exhaustive search ------------------------------

inline bool share_node(const Embedding& a, const Embedding& b) {
    for (NodeId v : a.node_ids) {
        if (std::find(b.node_ids.begin(), b.node_ids.end(), v) != b.node_ids.end()) return true;
    }
    return false;
}

/// Largest family of pairwise node-disjoint embeddings, by include/exclude
/// recursion without bounding.
inline std::size_t brute_max_disjoint(const std::vector<Embedding>& embs) {
    std::size_t best = 0;
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (chosen.size() + (embs.size() - i) <= best) return;
        if (i == embs.size()) {
            best = std::max(best, chosen.size());
            return;
        }
        bool fits = std::none_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return share_node(embs[c], embs[i]); });
        if (fits) {
            chosen.push_back(i);
            rec(i + 1);
            chosen.pop_back();
        }
        rec(i + 1);
    };
    rec(0);
    return best;
}

/// Synthetic embeddings realizing an arbitrary conflict graph: vertex i gets
/// a private node plus one shared node per incident conflict edge.
inline EmbeddingSet embeddings_from_conflicts(std::size_t count, const std::vector<std::pair<std::size_t, std::size_t>>& conflicts) {
    std::vector<std::vector<NodeId>> nodes(count);
    NodeId next = 0;
    for (std::size_t i = 0; i < count; ++i) nodes[i].push_back(next++);
    for (auto [a, b] : conflicts) {
        nodes[a].push_back(next);
        nodes[b].push_back(next);
        ++next;
    }
    EmbeddingSet set;
    for (std::size_t i = 0; i < count; ++i) {
        Embedding e;
        e.edge_ids = {static_cast<EdgeId>(i)};
        e.node_ids = nodes[i];
        std::sort(e.node_ids.begin(), e.node_ids.end());
        set.embeddings.push_back(std::move(e));
    }
    return set;
}

// --- spin expansion of a pseudo-Boolean polynomial -----------------------------

/// Rewrites every x_i as (1 - z_i) / 2 and collects coefficients per spin
/// subset; z_i = +1 when bit i is 0.
inline std::map<std::vector<std::uint32_t>, double> spin_expansion(const PseudoBooleanPolynomial& poly) {
    std::map<std::vector<std::uint32_t>, double> out;
    out[{}] += poly.constant();
    for (const auto& [vars, coef] : poly.terms()) {
        const std::size_t k = vars.size();
        const double scale = coef / static_cast<double>(1ULL << k);
        for (std::uint64_t s = 0; s < (1ULL << k); ++s) {
            std::vector<std::uint32_t> subset;
            for (std::size_t i = 0; i < k; ++i) {
                if ((s >> i) & 1) subset.push_back(vars[i]);
            }
            out[subset] += (subset.size() % 2 ? -scale : scale);
        }
    }
    return out;
}

inline double spin_value(const std::map<std::vector<std::uint32_t>, double>& spins, std::uint64_t basis) {
    double total = 0.0;
    for (const auto& [subset, c] : spins) {
        double sign = 1.0;
        for (auto v : subset) sign *= ((basis >> v) & 1) ? -1.0 : 1.0;
        total += c * sign;
    }
    return total;
}

}  // namespace testsupport
