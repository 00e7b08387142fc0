#pragma once

#include "motifq/embedding.hpp"

#include <chrono>
#include <string>

namespace motifq {

struct SolverResult {
    EmbeddingSet selected;  // non-overlapping
    std::string method;
    bool proven_optimal = false;
    std::chrono::nanoseconds elapsed{0};

    std::size_t motif_count() const { return selected.size(); }
};

enum class LossMode {
    Dynamic,  // loss recomputed against the candidates still available
    Static,   // loss computed once against the full candidate set
};

/// Least-loss greedy: repeatedly picks the candidate conflicting with the
/// fewest others (ties: least edge set), then discards everything it
/// conflicts with.
SolverResult baseline_greedy(const EmbeddingSet& embs, LossMode mode = LossMode::Dynamic);

inline constexpr std::size_t kDefaultExactCap = 64;

/// Maximum independent set of the conflict graph by branch and bound
/// (branch on a maximum-degree vertex, greedy clique cover bound), starting
/// from the greedy selection as incumbent. When the time budget runs out the
/// best set found so far is returned with proven_optimal = false. Throws SolverCapExceeded above `cap` candidates.
SolverResult exact_mis(const EmbeddingSet& embs, std::chrono::milliseconds budget = std::chrono::seconds(30),
                       std::size_t cap = kDefaultExactCap);

}  // namespace motifq
