#include "motifq/pipeline.hpp"

#include "motifq/errors.hpp"
#include "motifq/parallel.hpp"
#include "motifq/qaoa.hpp"
#include "motifq/rng.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace motifq {

std::string_view solver_name(SolverKind s) {
    switch (s) {
        case SolverKind::Qaoa: return "qaoa";
        case SolverKind::Baseline: return "baseline";
        case SolverKind::Exact: return "exact";
    }
    return "?";
}

std::optional<SolverKind> solver_from_name(std::string_view name) {
    if (name == "qaoa") return SolverKind::Qaoa;
    if (name == "baseline") return SolverKind::Baseline;
    if (name == "exact") return SolverKind::Exact;
    return std::nullopt;
}

std::string_view h_mode_name(HMode m) { return m == HMode::Anchored ? "anchored" : "orbit"; }

std::optional<HMode> h_mode_from_name(std::string_view name) {
    if (name == "anchored") return HMode::Anchored;
    if (name == "orbit") return HMode::Orbit;
    return std::nullopt;
}

StageTimings& StageTimings::operator+=(const StageTimings& o) {
    enumeration += o.enumeration;
    compile += o.compile;
    optimize += o.optimize;
    sample += o.sample;
    decode += o.decode;
    return *this;
}

Partition partition_network(const RegulatoryNetwork& net, std::size_t qubit_cap, std::size_t motif_edges) {
    if (qubit_cap < motif_edges) throw MotifLargerThanCap(motif_edges, qubit_cap);
    const std::size_t n = net.node_count();

    std::vector<std::vector<NodeId>> neighbours(n);
    for (const auto& e : net.edges()) {
        neighbours[e.src].push_back(e.dst);
        neighbours[e.dst].push_back(e.src);
    }
    for (auto& nb : neighbours) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }

    constexpr std::int64_t kUnassigned = -1;
    std::vector<std::int64_t> part_of(n, kUnassigned);
    Partition result;
    for (NodeId seed = 0; seed < n; ++seed) {
        if (part_of[seed] != kUnassigned) continue;
        const auto id = static_cast<std::int64_t>(result.parts.size());
        std::vector<NodeId> members;
        std::size_t induced = 0;
        std::deque<NodeId> frontier{seed};
        std::vector<char> queued(n, 0);
        queued[seed] = 1;
        while (!frontier.empty()) {
            const NodeId v = frontier.front();
            std::size_t added = 0;
            for (EdgeId e : net.out_edges(v)) added += part_of[net.edge(e).dst] == id ? 1 : 0;
            for (EdgeId e : net.in_edges(v)) added += part_of[net.edge(e).src] == id ? 1 : 0;
            if (induced + added > qubit_cap) break;
            frontier.pop_front();
            induced += added;
            part_of[v] = id;
            members.push_back(v);
            for (NodeId u : neighbours[v]) {
                if (part_of[u] == kUnassigned && !queued[u]) {
                    queued[u] = 1;
                    frontier.push_back(u);
                }
            }
        }
        std::sort(members.begin(), members.end());
        result.parts.push_back(std::move(members));
    }
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
        if (part_of[net.edge(e).src] != part_of[net.edge(e).dst]) result.dropped_edges.push_back(e);
    }
    return result;
}

namespace {

using Clock = std::chrono::steady_clock;

/// A network carved out of the input, with ids translated back to it.
struct Subnet {
    RegulatoryNetwork net;
    std::vector<NodeId> node_to_root;
    std::vector<EdgeId> edge_to_root;
};

Subnet root_subnet(const RegulatoryNetwork& net) {
    Subnet s{net, {}, {}};
    s.node_to_root.resize(net.node_count());
    s.edge_to_root.resize(net.edge_count());
    for (NodeId v = 0; v < net.node_count(); ++v) s.node_to_root[v] = v;
    for (EdgeId e = 0; e < net.edge_count(); ++e) s.edge_to_root[e] = e;
    return s;
}

Subnet link(const Subnet& parent, RegulatoryNetwork child) {
    Subnet s{std::move(child), {}, {}};
    for (NodeId v = 0; v < s.net.node_count(); ++v) {
        s.node_to_root.push_back(parent.node_to_root[*parent.net.find_node(s.net.node_name(v))]);
    }
    for (const auto& e : s.net.edges()) {
        auto src = *parent.net.find_node(s.net.node_name(e.src));
        auto dst = *parent.net.find_node(s.net.node_name(e.dst));
        s.edge_to_root.push_back(parent.edge_to_root[*parent.net.find_edge(src, dst)]);
    }
    return s;
}

Subnet induced_subnet(const Subnet& parent, std::span<const NodeId> nodes, std::string name) {
    return link(parent, parent.net.induced(nodes, std::move(name)));
}

Subnet edge_subnet(const Subnet& parent, std::span<const EdgeId> edges, std::string name) {
    return link(parent, parent.net.edge_subnetwork(edges, std::move(name)));
}

Embedding to_root(const Subnet& s, const Embedding& emb) {
    Embedding out;
    for (NodeId v : emb.mapping) out.mapping.push_back(s.node_to_root[v]);
    for (EdgeId e : emb.edge_ids) out.edge_ids.push_back(s.edge_to_root[e]);
    out.node_ids = out.mapping;
    std::sort(out.edge_ids.begin(), out.edge_ids.end());
    std::sort(out.node_ids.begin(), out.node_ids.end());
    return out;
}

struct WorkItem {
    Subnet sub;
    std::uint64_t seed = 0;
};

struct WorkResult {
    std::vector<Embedding> selected;  // root ids
    PartReport report;
    StageTimings timings;
};

void solve_greedy(const Subnet& sub, const EmbeddingSet& embs, const RunConfig& config, WorkResult& out) {
    auto res = baseline_greedy(embs, config.loss);
    for (const auto& emb : res.selected.embeddings) out.selected.push_back(to_root(sub, emb));
    out.report.solver = res.method;
    out.report.motif_count = res.motif_count();
}

WorkResult solve_item(const WorkItem& item, const MotifPattern& motif, const RunConfig& config) {
    WorkResult out;
    out.report.nodes = item.sub.net.node_count();
    out.report.edges = item.sub.net.edge_count();

    auto t0 = Clock::now();
    auto embs = enumerate_embeddings(item.sub.net, motif, config.match());
    out.timings.enumeration = Clock::now() - t0;
    out.report.candidates = embs.size();
    if (embs.empty()) {
        out.report.solver = std::string(solver_name(config.solver));
        return out;
    }

    if (config.solver == SolverKind::Baseline) {
        solve_greedy(item.sub, embs, config, out);
        return out;
    }

    if (config.solver == SolverKind::Exact) {
        try {
            auto res = exact_mis(embs, std::chrono::milliseconds(config.exact_budget_ms), config.exact_cap);
            for (const auto& emb : res.selected.embeddings) out.selected.push_back(to_root(item.sub, emb));
            out.report.solver = res.method;
            out.report.motif_count = res.motif_count();
            out.report.proven_optimal = res.proven_optimal;
            if (!res.proven_optimal) out.report.note = "time budget exhausted; best found";
        } catch (const Error& err) {
            solve_greedy(item.sub, embs, config, out);
            out.report.fallback = true;
            out.report.note = err.what();
        }
        return out;
    }

    try {
        const auto& net = item.sub.net;
        const std::size_t r = net.edge_count();
        if (r > config.qubit_cap) throw QubitCapExceeded(r, config.qubit_cap);

        auto t1 = Clock::now();
        const auto penalties = config.penalty ? Penalties{*config.penalty, *config.penalty, *config.penalty}
                                              : Penalties::defaults_for(r);
        auto objective = assemble_objective(net, motif, penalties, config.h_mode, config.match(), config.term_cap);
        auto table = objective_table(objective.f, r, config.qubit_cap);
        // The circuit runs on f / max|f| so that angles in [0, 2pi) stay in
        // the smooth small-angle region of the landscape.
        double scale = 0.0;
        for (double v : table) scale = std::max(scale, std::abs(v));
        if (scale == 0.0) scale = 1.0;
        std::vector<double> phase(table.size());
        std::transform(table.begin(), table.end(), phase.begin(), [scale](double v) { return v / scale; });
        auto t2 = Clock::now();
        out.timings.compile = t2 - t1;

        QaoaParams params;
        if (config.p > 0) {
            OptimizerConfig oc;
            oc.restarts = config.restarts;
            oc.max_evals = config.max_evals;
            oc.ftol = config.ftol;
            oc.xtol = config.xtol;
            oc.seed = derive_seed(item.seed, 1);
            auto opt = optimize_params(phase, config.p, oc, config.qubit_cap);
            params = opt.params;
            out.report.expectation = opt.expectation * scale;
        } else {
            out.report.expectation = expectation(initial_state(r, config.qubit_cap), table);
        }
        auto t3 = Clock::now();
        out.timings.optimize = t3 - t2;

        auto state = run_circuit(phase, params, config.qubit_cap);
        auto samples = sample_bitstrings(state, config.shots, derive_seed(item.seed, 2));
        auto t4 = Clock::now();
        out.timings.sample = t4 - t3;

        auto decoded = decode_samples(samples, table, net, motif, config.match());
        out.timings.decode = Clock::now() - t4;

        for (const auto& emb : decoded.embeddings.embeddings) out.selected.push_back(to_root(item.sub, emb));
        out.report.solver = "qaoa";
        out.report.motif_count = decoded.motif_count();
        out.report.repaired = decoded.repaired;
        out.report.f_value = decoded.f_decoded;
    } catch (const Error& err) {
        out.selected.clear();
        solve_greedy(item.sub, embs, config, out);
        out.report.fallback = true;
        out.report.note = err.what();
    }
    return out;
}

}  // namespace

SolutionReport run_identification(const RegulatoryNetwork& net, const MotifPattern& motif, const RunConfig& config) {
    SolutionReport report;
    report.network = net.name();
    report.motif = motif.name();
    report.network_nodes = net.node_count();
    report.network_edges = net.edge_count();
    report.config = config;
    report.embeddings.network_ref = net.name();

    const Subnet root = root_subnet(net);
    std::vector<WorkItem> items;

    if (config.solver == SolverKind::Qaoa) {
        if (config.qubit_cap < motif.edge_count()) throw MotifLargerThanCap(motif.edge_count(), config.qubit_cap);
        // Edges outside every embedding are forced to 0 in any feasible
        // assignment; drop them before spending qubits.
        auto t0 = Clock::now();
        const auto usable = enumerate_embeddings(net, motif, config.match()).edge_union();
        report.timings.enumeration += Clock::now() - t0;
        const Subnet reduced = edge_subnet(root, usable, net.name());
        for (const auto& comp : reduced.net.weak_components()) {
            const Subnet comp_sub = induced_subnet(reduced, comp, net.name());
            const auto partition = partition_network(comp_sub.net, config.qubit_cap, motif.edge_count());
            report.dropped_edges += partition.dropped_edges.size();
            for (const auto& part : partition.parts) {
                Subnet part_sub = induced_subnet(comp_sub, part, net.name());
                if (part_sub.net.edge_count() < motif.edge_count()) continue;
                // Cross-part drops can strand further edges; prune again.
                const auto part_usable = enumerate_embeddings(part_sub.net, motif, config.match()).edge_union();
                if (part_usable.empty()) continue;
                if (part_usable.size() < part_sub.net.edge_count()) {
                    part_sub = edge_subnet(part_sub, part_usable, net.name());
                }
                items.push_back({std::move(part_sub), 0});
            }
        }
    } else {
        for (const auto& comp : net.weak_components()) {
            Subnet sub = induced_subnet(root, comp, net.name());
            if (sub.net.edge_count() < motif.edge_count()) continue;
            items.push_back({std::move(sub), 0});
        }
    }
    for (std::size_t i = 0; i < items.size(); ++i) items[i].seed = derive_seed(config.seed, i);

    std::vector<WorkResult> results(items.size());
    parallel_for(items.size(), config.threads, [&](std::size_t i) { results[i] = solve_item(items[i], motif, config); });

    for (std::size_t i = 0; i < results.size(); ++i) {
        auto& res = results[i];
        res.report.index = i;
        report.timings += res.timings;
        for (auto& emb : res.selected) report.embeddings.embeddings.push_back(std::move(emb));
        report.parts.push_back(std::move(res.report));
    }
    std::sort(report.embeddings.embeddings.begin(), report.embeddings.embeddings.end());
    report.motif_count = report.embeddings.size();

    const auto check = verify_edge_decomposition(net, motif, report.embeddings.edge_union(), config.match());
    if (!check.feasible || check.witness.size() != report.motif_count) {
        throw std::logic_error("aggregated solution failed verification: " + check.violation);
    }

    for (const auto& emb : report.embeddings.embeddings) {
        for (EdgeId e : emb.edge_ids) {
            switch (net.edge(e).rel) {
                case Relation::Activation: ++report.activation_count; break;
                case Relation::Repression: ++report.repression_count; break;
                case Relation::Unknown: ++report.unknown_count; break;
            }
        }
    }
    return report;
}

std::size_t count_motifs(const RegulatoryNetwork& net, const MotifPattern& motif, const RunConfig& config) {
    return run_identification(net, motif, config).motif_count;
}

}  // namespace motifq
