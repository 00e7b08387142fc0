#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace motifq {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Regulation label of an edge. Activation and Repression carry the integer
/// codes 0 and 1; Unknown only occurs in curated real-world networks.
enum class Relation : std::uint8_t { Activation = 0, Repression = 1, Unknown = 2 };

char relation_code(Relation rel);
std::optional<Relation> relation_from_code(std::string_view code);
std::string_view relation_name(Relation rel);

/// Coefficient c of the label-consistency product: 1 when the network label
/// agrees with the motif label, or when the network label is Unknown and the
/// wildcard is enabled.
int relation_match(Relation net_rel, Relation motif_rel, bool unknown_is_wildcard);

struct Edge {
    NodeId src;
    NodeId dst;
    Relation rel;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct NamedEdge {
    std::string src;
    std::string dst;
    Relation rel;
};

/// Directed network with per-edge regulation labels.
///
/// Nodes are indexed in lexicographic order of their names and edges are
/// sorted by (src, dst), so two loads of the same data always produce the
/// same edge-to-index map. Instances are immutable once built.
class RegulatoryNetwork {
public:
    RegulatoryNetwork() = default;

    /// Validating constructor. `nodes` must be strictly increasing names,
    /// `edges` reference node indices; edges are sorted here. Throws
    /// InvalidGraph on self-loops, duplicates or dangling endpoints.
    RegulatoryNetwork(std::string name, std::vector<std::string> nodes, std::vector<Edge> edges);

    /// Normalizing builder used by the file readers: drops self-loops,
    /// collapses duplicate pairs (conflicting labels become Unknown) and
    /// appends a message to `warnings` for each such repair.
    static RegulatoryNetwork from_named_edges(std::string name, const std::vector<NamedEdge>& edges,
                                              const std::vector<std::string>& extra_nodes = {},
                                              std::vector<std::string>* warnings = nullptr);

    const std::string& name() const { return name_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<std::string>& node_names() const { return nodes_; }
    const std::string& node_name(NodeId v) const { return nodes_.at(v); }
    std::optional<NodeId> find_node(std::string_view name) const;

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    std::optional<EdgeId> find_edge(NodeId src, NodeId dst) const;

    std::span<const EdgeId> out_edges(NodeId v) const;
    std::span<const EdgeId> in_edges(NodeId v) const;

    std::vector<std::uint32_t> out_degrees() const;
    std::vector<std::uint32_t> in_degrees() const;

    /// Subnetwork induced on `keep` (node indices). Node names are preserved.
    RegulatoryNetwork induced(std::span<const NodeId> keep, std::string name = {}) const;

    /// Subnetwork made of the listed edges and their endpoints.
    RegulatoryNetwork edge_subnetwork(std::span<const EdgeId> keep, std::string name = {}) const;

    /// Node sets of the weakly-connected components, ordered by least node.
    std::vector<std::vector<NodeId>> weak_components() const;

    RegulatoryNetwork renamed(std::string name) const;

private:
    void index();

    std::string name_;
    std::vector<std::string> nodes_;
    std::vector<Edge> edges_;
    std::unordered_map<std::uint64_t, EdgeId> edge_index_;
    std::vector<std::uint32_t> out_offsets_, in_offsets_;
    std::vector<EdgeId> out_list_, in_list_;
};

struct MotifEdge {
    std::uint32_t a;
    std::uint32_t b;
    Relation rel;

    friend auto operator<=>(const MotifEdge&, const MotifEdge&) = default;
};

/// Small connected directed pattern. Nodes are 0-based internally; the text
/// format writes them 1-based. After canonicalization an edge 0 -> 1 exists.
class MotifPattern {
public:
    MotifPattern() = default;
    MotifPattern(std::string name, std::uint32_t size, std::vector<MotifEdge> edges);

    const std::string& name() const { return name_; }
    std::uint32_t size() const { return size_; }
    const std::vector<MotifEdge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    std::optional<std::size_t> find_edge(std::uint32_t a, std::uint32_t b) const;
    bool connected() const;

    friend bool operator==(const MotifPattern& x, const MotifPattern& y) {
        return x.size_ == y.size_ && x.edges_ == y.edges_;
    }

private:
    std::string name_;
    std::uint32_t size_ = 0;
    std::vector<MotifEdge> edges_;
};

/// Relabels motif nodes so that the sorted (a, b, relation) edge list is
/// lexicographically least among labelings with an edge 0 -> 1.
/// Throws MotifTooSmall or DisconnectedMotif.
MotifPattern canonicalize_motif(const MotifPattern& raw);

/// The four regulatory motifs used throughout: cascade, ffl, bifan,
/// biparallel (canonical form).
std::vector<MotifPattern> builtin_motifs();
std::optional<MotifPattern> builtin_motif(std::string_view name);

/// Number of label-preserving automorphisms of the motif.
std::size_t automorphism_count(const MotifPattern& motif);

}  // namespace motifq
