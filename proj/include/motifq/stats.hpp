#pragma once

#include "motifq/graph.hpp"
#include "motifq/pipeline.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace motifq {

enum class NullModel {
    DegreePreserving,  // directed double-edge swaps
    Uniform,           // edges re-placed uniformly, labels permuted
};

std::string_view null_model_name(NullModel m);

/// Randomized copy of `net` under the null model. Degree-preserving mode
/// performs 10 * |E| accepted swaps (a->b, c->d) => (a->d, c->b); labels
/// stay with the source endpoint's edge. Node set, edge count and the
/// relation multiset are always preserved.
RegulatoryNetwork shuffle_edges(const RegulatoryNetwork& net, std::uint64_t seed,
                                NullModel model = NullModel::DegreePreserving);

enum class Representation { Over, Under, Neutral };

std::string_view representation_name(Representation r);

struct ZScoreReport {
    std::size_t observed = 0;
    double null_mean = 0.0;
    double null_std = 0.0;  // sample standard deviation (N - 1)
    double z = 0.0;
    std::size_t replicates = 0;
    Representation classification = Representation::Neutral;
    bool degenerate = false;  // null_std == 0; z reported as 0
    std::uint64_t seed = 0;
    NullModel model = NullModel::DegreePreserving;
    std::vector<std::size_t> null_counts;  // by replicate index
};

/// Motif-count z-score of `net` against `replicates` null networks, all
/// solved with the same configuration. Replicate k uses a seed derived from
/// (seed, k). Requires replicates >= 2.
ZScoreReport zscore(const RegulatoryNetwork& net, const MotifPattern& motif, std::size_t replicates,
                    const RunConfig& config, std::uint64_t seed, NullModel model = NullModel::DegreePreserving);

/// Applies the +-2 thresholds and the sigma = 0 convention.
ZScoreReport summarize_counts(std::size_t observed, std::vector<std::size_t> null_counts);

}  // namespace motifq
