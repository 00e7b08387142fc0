#pragma once

#include "motifq/graph.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace motifq {

struct MatchOptions {
    bool unknown_wildcard = false;
};

/// One occurrence of a motif: the set of network edges it uses.
struct Embedding {
    std::vector<EdgeId> edge_ids;  // sorted
    std::vector<NodeId> node_ids;  // sorted
    std::vector<NodeId> mapping;   // motif node -> network node

    friend bool operator<(const Embedding& x, const Embedding& y) { return x.edge_ids < y.edge_ids; }
};

struct EmbeddingSet {
    std::vector<Embedding> embeddings;  // sorted by edge set, unique
    std::string network_ref;

    std::size_t size() const { return embeddings.size(); }
    bool empty() const { return embeddings.empty(); }

    /// True when no two members share a network node.
    bool non_overlapping() const;
    /// Union of member edge sets, sorted.
    std::vector<EdgeId> edge_union() const;
};

/// Restrictions applied to a mapping search.
struct MappingConstraints {
    /// Motif node -> network node assignments fixed up front.
    std::vector<std::pair<std::uint32_t, NodeId>> pinned;
    /// Edges the mapping may use; empty means all.
    std::function<bool(EdgeId)> edge_allowed;
    /// Nodes the mapping may use; empty means all.
    std::function<bool(NodeId)> node_allowed;
};

/// Calls `visit(mapping, edge_ids)` for every label-consistent injective
/// mapping of the motif into the network satisfying the constraints.
/// `edge_ids[k]` is the network edge hosting motif edge k. Mappings are
/// produced by backtracking from the pinned nodes (or motif node 0) along
/// motif adjacency.
void for_each_mapping(const RegulatoryNetwork& net, const MotifPattern& motif, const MatchOptions& opts,
                      const MappingConstraints& constraints,
                      const std::function<void(std::span<const NodeId>, std::span<const EdgeId>)>& visit);

/// Every distinct embedding (keyed by edge set) in deterministic order.
EmbeddingSet enumerate_embeddings(const RegulatoryNetwork& net, const MotifPattern& motif,
                                  const MatchOptions& opts = {});

/// Distinct embeddings that contain `anchor` and only use allowed edges.
std::vector<Embedding> embeddings_through(const RegulatoryNetwork& net, const MotifPattern& motif,
                                          const MatchOptions& opts, EdgeId anchor,
                                          const std::function<bool(EdgeId)>& edge_allowed = {});

struct DecompositionResult {
    bool feasible = false;
    EmbeddingSet witness;  // the unique non-overlapping family when feasible
    std::string violation;  // reason when infeasible
};

/// Decides whether `edge_subset` is the edge union of some non-overlapping
/// embedding family, reconstructing that family by peeling embeddings off
/// the smallest unconsumed edge.
DecompositionResult verify_edge_decomposition(const RegulatoryNetwork& net, const MotifPattern& motif,
                                              std::span<const EdgeId> edge_subset, const MatchOptions& opts = {});

/// Undirected conflict relation between embeddings sharing a network node.
struct ConflictGraph {
    std::vector<std::vector<std::uint32_t>> adjacency;  // sorted neighbour lists

    std::size_t vertex_count() const { return adjacency.size(); }
    std::size_t edge_count() const;
    bool conflicts(std::uint32_t u, std::uint32_t v) const;
};

ConflictGraph build_conflict_graph(const EmbeddingSet& embs);

/// Feasible core of an arbitrary edge subset: embeddings lying wholly inside
/// the subset are taken greedily in edge-set order whenever they do not
/// touch an already chosen node. The returned union always verifies
/// feasible.
std::vector<EdgeId> repair_to_feasible(const RegulatoryNetwork& net, const MotifPattern& motif,
                                       std::span<const EdgeId> edge_subset, const MatchOptions& opts = {});

}  // namespace motifq
