#include "motifq/graph.hpp"

#include "motifq/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace motifq {

namespace {

std::uint64_t pair_key(NodeId src, NodeId dst) { return (static_cast<std::uint64_t>(src) << 32) | dst; }

}  // namespace

char relation_code(Relation rel) {
    switch (rel) {
        case Relation::Activation: return 'A';
        case Relation::Repression: return 'R';
        case Relation::Unknown: return 'U';
    }
    return '?';
}

std::optional<Relation> relation_from_code(std::string_view code) {
    if (code == "A") return Relation::Activation;
    if (code == "R") return Relation::Repression;
    if (code == "U") return Relation::Unknown;
    return std::nullopt;
}

std::string_view relation_name(Relation rel) {
    switch (rel) {
        case Relation::Activation: return "Activation";
        case Relation::Repression: return "Repression";
        case Relation::Unknown: return "Unknown";
    }
    return "?";
}

int relation_match(Relation net_rel, Relation motif_rel, bool unknown_is_wildcard) {
    if (net_rel == Relation::Unknown) return unknown_is_wildcard ? 1 : 0;
    return net_rel == motif_rel ? 1 : 0;
}

// --- RegulatoryNetwork -------------------------------------------------------

RegulatoryNetwork::RegulatoryNetwork(std::string name, std::vector<std::string> nodes, std::vector<Edge> edges)
    : name_(std::move(name)), nodes_(std::move(nodes)), edges_(std::move(edges)) {
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        if (!(nodes_[i - 1] < nodes_[i])) throw InvalidGraph("node names must be unique and sorted");
    }
    for (const auto& e : edges_) {
        if (e.src >= nodes_.size() || e.dst >= nodes_.size()) throw InvalidGraph("edge endpoint out of range");
        if (e.src == e.dst) throw InvalidGraph("self-loop on " + nodes_[e.src]);
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& x, const Edge& y) { return std::tie(x.src, x.dst) < std::tie(y.src, y.dst); });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i - 1].src == edges_[i].src && edges_[i - 1].dst == edges_[i].dst) {
            throw InvalidGraph("duplicate edge " + nodes_[edges_[i].src] + " -> " + nodes_[edges_[i].dst]);
        }
    }
    index();
}

void RegulatoryNetwork::index() {
    const std::size_t n = nodes_.size();
    edge_index_.clear();
    edge_index_.reserve(edges_.size());
    out_offsets_.assign(n + 1, 0);
    in_offsets_.assign(n + 1, 0);
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        edge_index_.emplace(pair_key(edges_[e].src, edges_[e].dst), e);
        ++out_offsets_[edges_[e].src + 1];
        ++in_offsets_[edges_[e].dst + 1];
    }
    std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
    std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());
    out_list_.assign(edges_.size(), 0);
    in_list_.assign(edges_.size(), 0);
    auto out_fill = out_offsets_;
    auto in_fill = in_offsets_;
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        out_list_[out_fill[edges_[e].src]++] = e;
        in_list_[in_fill[edges_[e].dst]++] = e;
    }
}

RegulatoryNetwork RegulatoryNetwork::from_named_edges(std::string name, const std::vector<NamedEdge>& edges,
                                                      const std::vector<std::string>& extra_nodes,
                                                      std::vector<std::string>* warnings) {
    auto warn = [&](std::string msg) {
        if (warnings) warnings->push_back(std::move(msg));
    };

    std::vector<std::string> nodes(extra_nodes);
    for (const auto& e : edges) {
        nodes.push_back(e.src);
        nodes.push_back(e.dst);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    auto lookup = [&](const std::string& s) {
        return static_cast<NodeId>(std::lower_bound(nodes.begin(), nodes.end(), s) - nodes.begin());
    };

    std::map<std::pair<NodeId, NodeId>, Relation> merged;
    for (const auto& e : edges) {
        if (e.src == e.dst) {
            warn("dropping self-loop on " + e.src);
            continue;
        }
        auto key = std::make_pair(lookup(e.src), lookup(e.dst));
        auto [it, inserted] = merged.emplace(key, e.rel);
        if (!inserted && it->second != e.rel) {
            if (it->second != Relation::Unknown) {
                warn("conflicting relations for " + e.src + " -> " + e.dst + "; using Unknown");
            }
            it->second = Relation::Unknown;
        }
    }

    std::vector<Edge> out;
    out.reserve(merged.size());
    for (const auto& [key, rel] : merged) out.push_back({key.first, key.second, rel});
    return RegulatoryNetwork(std::move(name), std::move(nodes), std::move(out));
}

std::optional<NodeId> RegulatoryNetwork::find_node(std::string_view name) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), name);
    if (it == nodes_.end() || *it != name) return std::nullopt;
    return static_cast<NodeId>(it - nodes_.begin());
}

std::optional<EdgeId> RegulatoryNetwork::find_edge(NodeId src, NodeId dst) const {
    auto it = edge_index_.find(pair_key(src, dst));
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
}

std::span<const EdgeId> RegulatoryNetwork::out_edges(NodeId v) const {
    return {out_list_.data() + out_offsets_[v], out_list_.data() + out_offsets_[v + 1]};
}

std::span<const EdgeId> RegulatoryNetwork::in_edges(NodeId v) const {
    return {in_list_.data() + in_offsets_[v], in_list_.data() + in_offsets_[v + 1]};
}

std::vector<std::uint32_t> RegulatoryNetwork::out_degrees() const {
    std::vector<std::uint32_t> d(nodes_.size());
    for (NodeId v = 0; v < nodes_.size(); ++v) d[v] = out_offsets_[v + 1] - out_offsets_[v];
    return d;
}

std::vector<std::uint32_t> RegulatoryNetwork::in_degrees() const {
    std::vector<std::uint32_t> d(nodes_.size());
    for (NodeId v = 0; v < nodes_.size(); ++v) d[v] = in_offsets_[v + 1] - in_offsets_[v];
    return d;
}

RegulatoryNetwork RegulatoryNetwork::induced(std::span<const NodeId> keep, std::string name) const {
    std::vector<NodeId> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::int64_t> remap(nodes_.size(), -1);
    std::vector<std::string> names;
    names.reserve(sorted.size());
    for (NodeId v : sorted) {
        remap.at(v) = static_cast<std::int64_t>(names.size());
        names.push_back(nodes_[v]);
    }
    std::vector<Edge> out;
    for (const auto& e : edges_) {
        if (remap[e.src] >= 0 && remap[e.dst] >= 0) {
            out.push_back({static_cast<NodeId>(remap[e.src]), static_cast<NodeId>(remap[e.dst]), e.rel});
        }
    }
    return RegulatoryNetwork(name.empty() ? name_ : std::move(name), std::move(names), std::move(out));
}

RegulatoryNetwork RegulatoryNetwork::edge_subnetwork(std::span<const EdgeId> keep, std::string name) const {
    std::vector<NodeId> nodes;
    for (EdgeId e : keep) {
        nodes.push_back(edge(e).src);
        nodes.push_back(edge(e).dst);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    std::vector<std::int64_t> remap(nodes_.size(), -1);
    std::vector<std::string> names;
    for (NodeId v : nodes) {
        remap[v] = static_cast<std::int64_t>(names.size());
        names.push_back(nodes_[v]);
    }
    std::vector<EdgeId> ids(keep.begin(), keep.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<Edge> out;
    for (EdgeId e : ids) {
        out.push_back({static_cast<NodeId>(remap[edges_[e].src]), static_cast<NodeId>(remap[edges_[e].dst]),
                       edges_[e].rel});
    }
    return RegulatoryNetwork(name.empty() ? name_ : std::move(name), std::move(names), std::move(out));
}

std::vector<std::vector<NodeId>> RegulatoryNetwork::weak_components() const {
    const std::size_t n = nodes_.size();
    std::vector<NodeId> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](NodeId v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& e : edges_) {
        NodeId a = find(e.src), b = find(e.dst);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::vector<NodeId>> comps;
    std::vector<std::int64_t> slot(n, -1);
    for (NodeId v = 0; v < n; ++v) {
        NodeId root = find(v);
        if (slot[root] < 0) {
            slot[root] = static_cast<std::int64_t>(comps.size());
            comps.emplace_back();
        }
        comps[slot[root]].push_back(v);
    }
    return comps;
}

RegulatoryNetwork RegulatoryNetwork::renamed(std::string name) const {
    RegulatoryNetwork copy(*this);
    copy.name_ = std::move(name);
    return copy;
}

// --- MotifPattern ------------------------------------------------------------

MotifPattern::MotifPattern(std::string name, std::uint32_t size, std::vector<MotifEdge> edges)
    : name_(std::move(name)), size_(size), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        if (e.a >= size_ || e.b >= size_) throw InvalidGraph("motif edge endpoint out of range");
        if (e.a == e.b) throw InvalidGraph("motif contains a self-loop");
        if (e.rel == Relation::Unknown) throw InvalidGraph("motif edges must be Activation or Repression");
        if (i > 0 && edges_[i - 1].a == e.a && edges_[i - 1].b == e.b) throw InvalidGraph("duplicate motif edge");
    }
}

std::optional<std::size_t> MotifPattern::find_edge(std::uint32_t a, std::uint32_t b) const {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (edges_[i].a == a && edges_[i].b == b) return i;
    }
    return std::nullopt;
}

bool MotifPattern::connected() const {
    if (size_ == 0) return true;
    std::vector<bool> seen(size_, false);
    std::vector<std::uint32_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (const auto& e : edges_) {
            std::uint32_t other = e.a == v ? e.b : (e.b == v ? e.a : size_);
            if (other < size_ && !seen[other]) {
                seen[other] = true;
                stack.push_back(other);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
}

namespace {

std::vector<MotifEdge> relabel(const std::vector<MotifEdge>& edges, const std::vector<std::uint32_t>& perm) {
    std::vector<MotifEdge> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.push_back({perm[e.a], perm[e.b], e.rel});
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

MotifPattern canonicalize_motif(const MotifPattern& raw) {
    if (raw.size() < 3) throw MotifTooSmall(raw.size());
    if (!raw.connected()) throw DisconnectedMotif();

    std::vector<std::uint32_t> perm(raw.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<std::vector<MotifEdge>> best;
    do {
        auto candidate = relabel(raw.edges(), perm);
        bool has_01 = std::any_of(candidate.begin(), candidate.end(),
                                  [](const MotifEdge& e) { return e.a == 0 && e.b == 1; });
        if (has_01 && (!best || candidate < *best)) best = std::move(candidate);
    } while (std::next_permutation(perm.begin(), perm.end()));
    // A connected pattern with >= 3 nodes always has some edge to place on 0 -> 1.
    return MotifPattern(raw.name(), raw.size(), std::move(*best));
}

std::size_t automorphism_count(const MotifPattern& motif) {
    std::vector<std::uint32_t> perm(motif.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t count = 0;
    do {
        if (relabel(motif.edges(), perm) == motif.edges()) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

std::vector<MotifPattern> builtin_motifs() {
    constexpr auto A = Relation::Activation;
    constexpr auto R = Relation::Repression;
    std::vector<MotifPattern> raw{
        // 3-node directed cycle.
        MotifPattern("cascade", 3, {{0, 1, A}, {1, 2, A}, {2, 0, A}}),
        // Feed-forward loop: regulator 0, intermediate 1, target 2.
        MotifPattern("ffl", 3, {{0, 1, A}, {1, 2, R}, {0, 2, A}}),
        // Two regulators {0, 1} jointly controlling targets {2, 3}.
        MotifPattern("bifan", 4, {{0, 2, A}, {0, 3, A}, {1, 2, A}, {1, 3, R}}),
        // Diamond 0 -> {1, 2} -> 3.
        MotifPattern("biparallel", 4, {{0, 1, A}, {0, 2, A}, {1, 3, A}, {2, 3, A}}),
    };
    std::vector<MotifPattern> out;
    out.reserve(raw.size());
    for (const auto& m : raw) out.push_back(canonicalize_motif(m));
    return out;
}

std::optional<MotifPattern> builtin_motif(std::string_view name) {
    for (auto& m : builtin_motifs()) {
        if (m.name() == name) return m;
    }
    return std::nullopt;
}

}  // namespace motifq
