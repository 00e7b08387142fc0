#include "motifq/stats.hpp"

#include "motifq/errors.hpp"
#include "motifq/parallel.hpp"
#include "motifq/rng.hpp"

#include <cmath>
#include <numeric>
#include <unordered_set>

namespace motifq {

namespace {

std::uint64_t key(NodeId a, NodeId b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

RegulatoryNetwork degree_preserving(const RegulatoryNetwork& net, CounterRng& rng) {
    std::vector<Edge> edges = net.edges();
    const std::size_t m = edges.size();
    if (m < 2) return net;
    std::unordered_set<std::uint64_t> present;
    present.reserve(2 * m);
    for (const auto& e : edges) present.insert(key(e.src, e.dst));

    const std::size_t wanted = 10 * m;
    const std::size_t max_attempts = 100 * wanted;
    std::size_t accepted = 0;
    for (std::size_t attempt = 0; attempt < max_attempts && accepted < wanted; ++attempt) {
        const auto i = rng.below(m);
        const auto j = rng.below(m);
        if (i == j) continue;
        Edge& x = edges[i];
        Edge& y = edges[j];
        // Rewire a->b, c->d into a->d, c->b.
        if (x.src == y.src || x.dst == y.dst) continue;
        if (x.src == y.dst || y.src == x.dst) continue;
        if (present.count(key(x.src, y.dst)) || present.count(key(y.src, x.dst))) continue;
        present.erase(key(x.src, x.dst));
        present.erase(key(y.src, y.dst));
        std::swap(x.dst, y.dst);
        present.insert(key(x.src, x.dst));
        present.insert(key(y.src, y.dst));
        ++accepted;
    }
    return RegulatoryNetwork(net.name(), net.node_names(), std::move(edges));
}

RegulatoryNetwork uniform(const RegulatoryNetwork& net, CounterRng& rng) {
    const std::size_t n = net.node_count();
    const std::size_t m = net.edge_count();
    std::vector<Relation> labels;
    for (const auto& e : net.edges()) labels.push_back(e.rel);
    rng.shuffle(std::span<Relation>(labels));
    std::unordered_set<std::uint64_t> present;
    std::vector<Edge> edges;
    while (edges.size() < m) {
        const auto a = static_cast<NodeId>(rng.below(n));
        const auto b = static_cast<NodeId>(rng.below(n));
        if (a == b || !present.insert(key(a, b)).second) continue;
        edges.push_back({a, b, labels[edges.size()]});
    }
    return RegulatoryNetwork(net.name(), net.node_names(), std::move(edges));
}

}  // namespace

std::string_view null_model_name(NullModel m) { return m == NullModel::Uniform ? "uniform" : "degree"; }

std::string_view representation_name(Representation r) {
    switch (r) {
        case Representation::Over: return "over";
        case Representation::Under: return "under";
        case Representation::Neutral: return "neutral";
    }
    return "?";
}

RegulatoryNetwork shuffle_edges(const RegulatoryNetwork& net, std::uint64_t seed, NullModel model) {
    CounterRng rng(seed);
    return model == NullModel::Uniform ? uniform(net, rng) : degree_preserving(net, rng);
}

ZScoreReport summarize_counts(std::size_t observed, std::vector<std::size_t> null_counts) {
    ZScoreReport rep;
    rep.observed = observed;
    rep.replicates = null_counts.size();
    const double n = static_cast<double>(null_counts.size());
    double sum = 0.0;
    for (auto c : null_counts) sum += static_cast<double>(c);
    rep.null_mean = n > 0 ? sum / n : 0.0;
    double ss = 0.0;
    for (auto c : null_counts) ss += (static_cast<double>(c) - rep.null_mean) * (static_cast<double>(c) - rep.null_mean);
    rep.null_std = n > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    if (rep.null_std == 0.0) {
        rep.degenerate = true;
        rep.z = 0.0;
    } else {
        rep.z = (static_cast<double>(observed) - rep.null_mean) / rep.null_std;
    }
    rep.classification = rep.z > 2.0 ? Representation::Over : rep.z < -2.0 ? Representation::Under : Representation::Neutral;
    rep.null_counts = std::move(null_counts);
    return rep;
}

ZScoreReport zscore(const RegulatoryNetwork& net, const MotifPattern& motif, std::size_t replicates,
                    const RunConfig& config, std::uint64_t seed, NullModel model) {
    if (replicates < 2) throw Error("z-score needs at least 2 null replicates");
    const std::size_t observed = count_motifs(net, motif, config);

    std::vector<std::size_t> counts(replicates, 0);
    RunConfig inner = config;
    inner.threads = 1;
    parallel_for(replicates, config.threads, [&](std::size_t k) {
        const auto null_net = shuffle_edges(net, derive_seed(seed, k), model);
        counts[k] = count_motifs(null_net, motif, inner);
    });

    auto rep = summarize_counts(observed, std::move(counts));
    rep.seed = seed;
    rep.model = model;
    return rep;
}

}  // namespace motifq
