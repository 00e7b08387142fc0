#pragma once

#include "motifq/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace motifq {

enum class DegreeConvention {
    Total,    // edge target = round(n * d / 2)
    OutDegree,  // edge target = round(n * d)
};

struct SynthSpec {
    std::size_t n = 200;
    double d = 4.0;
    double r_act = 0.5;
    MotifPattern motif;
    std::size_t plant_count = 5;
    std::uint64_t seed = 0;
    DegreeConvention convention = DegreeConvention::Total;
    std::string name;  // optional; derived from the parameters when empty

    std::size_t target_edges() const;
    std::string instance_name() const;
};

/// Network with `plant_count` node-disjoint copies of the motif (exact
/// labels) plus uniformly random filler edges up to the edge target. Filler
/// labels hit the activation ratio exactly (rounded) and are randomly
/// permuted. Throws InfeasibleSpec.
RegulatoryNetwork generate(const SynthSpec& spec);

/// Node names of the planted copies in `generate(spec)`, one list per copy
/// in motif-node order.
std::vector<std::vector<std::string>> planted_copies(const SynthSpec& spec);

/// Sweep manifest: one spec per line as whitespace-separated key=value
/// tokens (n, d, r, motif, plants, seed, name, convention), `#` comments.
std::vector<SynthSpec> parse_manifest(std::istream& in, const std::string& source = "manifest");

}  // namespace motifq
