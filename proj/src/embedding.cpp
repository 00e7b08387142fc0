#include "motifq/embedding.hpp"

#include "motifq/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace motifq {

namespace {

constexpr NodeId kUnmapped = static_cast<NodeId>(-1);

/// Motif-side search plan: placement order plus, for every placed node,
/// the motif edges that connect it back to earlier nodes.
struct SearchPlan {
    std::vector<std::uint32_t> order;
    // For position k > pinned: the motif edge used to generate candidates.
    std::vector<std::optional<std::size_t>> generator;
    // Motif edges whose both endpoints are placed once position k is placed.
    std::vector<std::vector<std::size_t>> closing;
};

SearchPlan make_plan(const MotifPattern& motif, const std::vector<std::uint32_t>& pinned_nodes) {
    const std::uint32_t n = motif.size();
    SearchPlan plan;
    std::vector<bool> placed(n, false);
    std::vector<std::uint32_t> position(n, n);

    auto place = [&](std::uint32_t v) {
        position[v] = static_cast<std::uint32_t>(plan.order.size());
        plan.order.push_back(v);
        placed[v] = true;
    };
    for (auto v : pinned_nodes) {
        if (!placed[v]) place(v);
    }
    if (plan.order.empty()) place(0);

    while (plan.order.size() < n) {
        // Most-constrained next: the unplaced node with most edges into the placed set.
        std::uint32_t best = n;
        int best_links = 0;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (placed[v]) continue;
            int links = 0;
            for (const auto& e : motif.edges()) {
                if ((e.a == v && placed[e.b]) || (e.b == v && placed[e.a])) ++links;
            }
            if (links > best_links) {
                best = v;
                best_links = links;
            }
        }
        if (best == n) throw DisconnectedMotif();
        place(best);
    }

    plan.generator.assign(n, std::nullopt);
    plan.closing.assign(n, {});
    for (std::size_t k = 0; k < motif.edge_count(); ++k) {
        const auto& e = motif.edges()[k];
        std::uint32_t later = std::max(position[e.a], position[e.b]);
        plan.closing[later].push_back(k);
    }
    for (std::uint32_t k = static_cast<std::uint32_t>(pinned_nodes.size()); k < n; ++k) {
        if (k == 0) continue;
        if (!plan.closing[k].empty()) plan.generator[k] = plan.closing[k].front();
    }
    return plan;
}

class MappingSearch {
public:
    MappingSearch(const RegulatoryNetwork& net, const MotifPattern& motif, const MatchOptions& opts,
                  const MappingConstraints& constraints,
                  const std::function<void(std::span<const NodeId>, std::span<const EdgeId>)>& visit)
        : net_(net), motif_(motif), opts_(opts), constraints_(constraints), visit_(visit),
          mapping_(motif.size(), kUnmapped), edge_ids_(motif.edge_count(), 0),
          used_(net.node_count(), false) {
        std::vector<std::uint32_t> pinned_nodes;
        for (const auto& [m, v] : constraints.pinned) pinned_nodes.push_back(m);
        plan_ = make_plan(motif, pinned_nodes);
        pinned_count_ = 0;
        for (const auto& [m, v] : constraints.pinned) {
            if (v >= net.node_count()) return;  // nothing can match
            if (mapping_[m] != kUnmapped) {
                if (mapping_[m] != v) return;
                continue;
            }
            if (used_[v] || !node_ok(v)) return;
            mapping_[m] = v;
            used_[v] = true;
            if (!close(pinned_count_)) return;
            ++pinned_count_;
        }
        ready_ = true;
    }

    void run() {
        if (!ready_) return;
        extend(pinned_count_);
    }

private:
    bool node_ok(NodeId v) const { return !constraints_.node_allowed || constraints_.node_allowed(v); }
    bool edge_ok(EdgeId e) const { return !constraints_.edge_allowed || constraints_.edge_allowed(e); }

    // Checks every motif edge completed by placing position k.
    bool close(std::uint32_t k) {
        for (std::size_t idx : plan_.closing[k]) {
            const auto& me = motif_.edges()[idx];
            auto e = net_.find_edge(mapping_[me.a], mapping_[me.b]);
            if (!e || !edge_ok(*e)) return false;
            if (!relation_match(net_.edge(*e).rel, me.rel, opts_.unknown_wildcard)) return false;
            edge_ids_[idx] = *e;
        }
        return true;
    }

    void try_node(std::uint32_t k, NodeId v) {
        const std::uint32_t m = plan_.order[k];
        if (used_[v] || !node_ok(v)) return;
        mapping_[m] = v;
        used_[v] = true;
        if (close(k)) extend(k + 1);
        used_[v] = false;
        mapping_[m] = kUnmapped;
    }

    void extend(std::uint32_t k) {
        if (k == motif_.size()) {
            visit_(mapping_, edge_ids_);
            return;
        }
        const auto& gen = plan_.generator[k];
        if (!gen) {
            for (NodeId v = 0; v < net_.node_count(); ++v) try_node(k, v);
            return;
        }
        const auto& me = motif_.edges()[*gen];
        const std::uint32_t m = plan_.order[k];
        if (me.b == m) {
            for (EdgeId e : net_.out_edges(mapping_[me.a])) try_node(k, net_.edge(e).dst);
        } else {
            for (EdgeId e : net_.in_edges(mapping_[me.b])) try_node(k, net_.edge(e).src);
        }
    }

    const RegulatoryNetwork& net_;
    const MotifPattern& motif_;
    const MatchOptions& opts_;
    const MappingConstraints& constraints_;
    const std::function<void(std::span<const NodeId>, std::span<const EdgeId>)>& visit_;
    SearchPlan plan_;
    std::vector<NodeId> mapping_;
    std::vector<EdgeId> edge_ids_;
    std::vector<bool> used_;
    std::uint32_t pinned_count_ = 0;
    bool ready_ = false;
};

Embedding make_embedding(std::span<const NodeId> mapping, std::span<const EdgeId> edges) {
    Embedding emb;
    emb.mapping.assign(mapping.begin(), mapping.end());
    emb.edge_ids.assign(edges.begin(), edges.end());
    std::sort(emb.edge_ids.begin(), emb.edge_ids.end());
    emb.node_ids = emb.mapping;
    std::sort(emb.node_ids.begin(), emb.node_ids.end());
    return emb;
}

/// Keeps one embedding per edge set (the lexicographically least mapping).
void insert_unique(std::map<std::vector<EdgeId>, Embedding>& acc, Embedding emb) {
    auto it = acc.find(emb.edge_ids);
    if (it == acc.end()) {
        acc.emplace(emb.edge_ids, std::move(emb));
    } else if (emb.mapping < it->second.mapping) {
        it->second = std::move(emb);
    }
}

std::vector<Embedding> drain(std::map<std::vector<EdgeId>, Embedding>& acc) {
    std::vector<Embedding> out;
    out.reserve(acc.size());
    for (auto& [key, emb] : acc) out.push_back(std::move(emb));
    return out;
}

}  // namespace

void for_each_mapping(const RegulatoryNetwork& net, const MotifPattern& motif, const MatchOptions& opts,
                      const MappingConstraints& constraints,
                      const std::function<void(std::span<const NodeId>, std::span<const EdgeId>)>& visit) {
    if (motif.size() == 0 || motif.size() > net.node_count()) return;
    MappingSearch search(net, motif, opts, constraints, visit);
    search.run();
}

bool EmbeddingSet::non_overlapping() const {
    std::set<NodeId> seen;
    for (const auto& emb : embeddings) {
        for (NodeId v : emb.node_ids) {
            if (!seen.insert(v).second) return false;
        }
    }
    return true;
}

std::vector<EdgeId> EmbeddingSet::edge_union() const {
    std::vector<EdgeId> out;
    for (const auto& emb : embeddings) out.insert(out.end(), emb.edge_ids.begin(), emb.edge_ids.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

EmbeddingSet enumerate_embeddings(const RegulatoryNetwork& net, const MotifPattern& motif, const MatchOptions& opts) {
    std::map<std::vector<EdgeId>, Embedding> acc;
    for_each_mapping(net, motif, opts, {}, [&](std::span<const NodeId> mapping, std::span<const EdgeId> edges) {
        insert_unique(acc, make_embedding(mapping, edges));
    });
    return EmbeddingSet{drain(acc), net.name()};
}

std::vector<Embedding> embeddings_through(const RegulatoryNetwork& net, const MotifPattern& motif,
                                          const MatchOptions& opts, EdgeId anchor,
                                          const std::function<bool(EdgeId)>& edge_allowed) {
    if (anchor >= net.edge_count()) throw UnknownEdge(anchor);
    if (edge_allowed && !edge_allowed(anchor)) return {};
    const auto& a = net.edge(anchor);
    std::map<std::vector<EdgeId>, Embedding> acc;
    for (const auto& me : motif.edges()) {
        MappingConstraints c;
        c.pinned = {{me.a, a.src}, {me.b, a.dst}};
        c.edge_allowed = edge_allowed;
        for_each_mapping(net, motif, opts, c, [&](std::span<const NodeId> mapping, std::span<const EdgeId> edges) {
            insert_unique(acc, make_embedding(mapping, edges));
        });
    }
    return drain(acc);
}

DecompositionResult verify_edge_decomposition(const RegulatoryNetwork& net, const MotifPattern& motif,
                                              std::span<const EdgeId> edge_subset, const MatchOptions& opts) {
    DecompositionResult result;
    result.witness.network_ref = net.name();

    std::vector<EdgeId> subset(edge_subset.begin(), edge_subset.end());
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    for (EdgeId e : subset) {
        if (e >= net.edge_count()) throw UnknownEdge(e);
    }

    std::vector<char> remaining(net.edge_count(), 0);
    for (EdgeId e : subset) remaining[e] = 1;
    std::vector<char> node_taken(net.node_count(), 0);
    auto allowed = [&](EdgeId e) { return remaining[e] != 0; };

    for (EdgeId e : subset) {
        if (!remaining[e]) continue;
        auto witnesses = embeddings_through(net, motif, opts, e, allowed);
        if (witnesses.empty()) {
            result.violation = "edge " + std::to_string(e) + " lies in no complete embedding";
            return result;
        }
        // witnesses are sorted by edge set; take the least.
        Embedding& w = witnesses.front();
        for (NodeId v : w.node_ids) {
            if (node_taken[v]) {
                result.violation = "embeddings share node " + net.node_name(v);
                return result;
            }
        }
        for (NodeId v : w.node_ids) node_taken[v] = 1;
        for (EdgeId x : w.edge_ids) remaining[x] = 0;
        result.witness.embeddings.push_back(std::move(w));
    }
    std::sort(result.witness.embeddings.begin(), result.witness.embeddings.end());
    result.feasible = true;
    return result;
}

std::size_t ConflictGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& nbrs : adjacency) total += nbrs.size();
    return total / 2;
}

bool ConflictGraph::conflicts(std::uint32_t u, std::uint32_t v) const {
    const auto& nbrs = adjacency.at(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

ConflictGraph build_conflict_graph(const EmbeddingSet& embs) {
    ConflictGraph g;
    g.adjacency.resize(embs.size());
    std::map<NodeId, std::vector<std::uint32_t>> by_node;
    for (std::uint32_t i = 0; i < embs.size(); ++i) {
        for (NodeId v : embs.embeddings[i].node_ids) by_node[v].push_back(i);
    }
    for (const auto& [v, members] : by_node) {
        for (std::size_t x = 0; x < members.size(); ++x) {
            for (std::size_t y = x + 1; y < members.size(); ++y) {
                g.adjacency[members[x]].push_back(members[y]);
                g.adjacency[members[y]].push_back(members[x]);
            }
        }
    }
    for (auto& nbrs : g.adjacency) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return g;
}

std::vector<EdgeId> repair_to_feasible(const RegulatoryNetwork& net, const MotifPattern& motif,
                                       std::span<const EdgeId> edge_subset, const MatchOptions& opts) {
    std::vector<char> in_subset(net.edge_count(), 0);
    for (EdgeId e : edge_subset) {
        if (e >= net.edge_count()) throw UnknownEdge(e);
        in_subset[e] = 1;
    }
    std::map<std::vector<EdgeId>, Embedding> acc;
    MappingConstraints c;
    c.edge_allowed = [&](EdgeId e) { return in_subset[e] != 0; };
    for_each_mapping(net, motif, opts, c, [&](std::span<const NodeId> mapping, std::span<const EdgeId> edges) {
        insert_unique(acc, make_embedding(mapping, edges));
    });

    std::vector<char> taken(net.node_count(), 0);
    std::vector<EdgeId> out;
    for (const auto& [key, emb] : acc) {
        if (std::any_of(emb.node_ids.begin(), emb.node_ids.end(), [&](NodeId v) { return taken[v] != 0; })) continue;
        for (NodeId v : emb.node_ids) taken[v] = 1;
        out.insert(out.end(), emb.edge_ids.begin(), emb.edge_ids.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace motifq
