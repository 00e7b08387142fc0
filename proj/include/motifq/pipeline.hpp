#pragma once

#include "motifq/classical.hpp"
#include "motifq/embedding.hpp"
#include "motifq/graph.hpp"
#include "motifq/pbo.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace motifq {

enum class SolverKind { Qaoa, Baseline, Exact };

std::string_view solver_name(SolverKind s);
std::optional<SolverKind> solver_from_name(std::string_view name);
std::string_view h_mode_name(HMode m);
std::optional<HMode> h_mode_from_name(std::string_view name);

/// Every knob of an identification run. All fields have defaults and the
/// full struct is echoed into each report.
struct RunConfig {
    SolverKind solver = SolverKind::Qaoa;
    std::size_t p = 2;
    std::size_t shots = 1024;
    std::size_t restarts = 5;
    std::size_t max_evals = 400;
    double ftol = 1e-6;
    double xtol = 1e-6;
    /// Penalty constant for A1..A3; unset means |E| + 1 of each solved part.
    std::optional<double> penalty;
    std::size_t qubit_cap = kDefaultQubitCap;
    HMode h_mode = HMode::Orbit;
    bool wildcard = false;
    std::uint64_t seed = 0;
    std::size_t exact_cap = kDefaultExactCap;
    std::int64_t exact_budget_ms = 30'000;
    LossMode loss = LossMode::Dynamic;
    std::size_t term_cap = kDefaultTermCap;
    std::size_t threads = 1;

    MatchOptions match() const { return MatchOptions{wildcard}; }
};

struct Partition {
    std::vector<std::vector<NodeId>> parts;  // pairwise disjoint, covering all nodes
    std::vector<EdgeId> dropped_edges;       // edges between different parts
};

/// Greedy BFS clustering: grow a part from the least unassigned node,
/// taking frontier nodes in discovery order until the next one would push
/// the induced edge count past `qubit_cap`. Throws MotifLargerThanCap when
/// the cap cannot hold a single motif copy.
Partition partition_network(const RegulatoryNetwork& net, std::size_t qubit_cap, std::size_t motif_edges);

struct StageTimings {
    std::chrono::nanoseconds enumeration{0};
    std::chrono::nanoseconds compile{0};
    std::chrono::nanoseconds optimize{0};
    std::chrono::nanoseconds sample{0};
    std::chrono::nanoseconds decode{0};

    StageTimings& operator+=(const StageTimings& o);
};

struct PartReport {
    std::size_t index = 0;
    std::size_t nodes = 0;
    std::size_t edges = 0;  // qubits for the qaoa solver
    std::size_t candidates = 0;
    std::size_t motif_count = 0;
    std::string solver;
    bool fallback = false;
    std::string note;
    // qaoa only
    std::optional<double> expectation;
    std::optional<bool> repaired;
    std::optional<double> f_value;
    std::optional<bool> proven_optimal;
};

struct SolutionReport {
    std::string network;
    std::string motif;
    std::size_t network_nodes = 0;
    std::size_t network_edges = 0;
    EmbeddingSet embeddings;  // edge and node ids of the input network
    std::size_t motif_count = 0;
    std::size_t activation_count = 0;
    std::size_t repression_count = 0;
    std::size_t unknown_count = 0;
    std::size_t dropped_edges = 0;
    std::vector<PartReport> parts;
    RunConfig config;
    StageTimings timings;
};

/// Splits the network into weakly-connected components (and, for the qaoa
/// solver, into parts within the qubit cap), solves each, and merges the
/// node-disjoint results. The merged edge set is re-verified before return.
SolutionReport run_identification(const RegulatoryNetwork& net, const MotifPattern& motif, const RunConfig& config);

/// Only the motif count, for significance replicates.
std::size_t count_motifs(const RegulatoryNetwork& net, const MotifPattern& motif, const RunConfig& config);

}  // namespace motifq
