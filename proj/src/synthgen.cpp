#include "motifq/synthgen.hpp"

#include "motifq/errors.hpp"
#include "motifq/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>

namespace motifq {

namespace {

constexpr std::uint64_t kPlacementStream = 1;
constexpr std::uint64_t kFillerStream = 2;
constexpr std::uint64_t kLabelStream = 3;

std::string node_label(std::size_t i, std::size_t n) {
    std::size_t width = 1;
    for (std::size_t m = n > 0 ? n - 1 : 0; m >= 10; m /= 10) ++width;
    std::string digits = std::to_string(i);
    return "g" + std::string(width - std::min(width, digits.size()), '0') + digits;
}

void validate(const SynthSpec& spec) {
    if (spec.motif.size() == 0) throw InfeasibleSpec("synthetic spec has no motif");
    if (spec.r_act < 0.0 || spec.r_act > 1.0) throw InfeasibleSpec("activation ratio must lie in [0, 1]");
    if (spec.d < 0.0) throw InfeasibleSpec("mean degree must be non-negative");
    if (spec.n < spec.plant_count * spec.motif.size()) {
        throw InfeasibleSpec("n = " + std::to_string(spec.n) + " cannot host " + std::to_string(spec.plant_count) +
                             " disjoint copies of a " + std::to_string(spec.motif.size()) + "-node motif");
    }
    const std::size_t target = spec.target_edges();
    const std::size_t planted = spec.plant_count * spec.motif.edge_count();
    if (target < planted) {
        throw InfeasibleSpec("edge target " + std::to_string(target) + " is below the " + std::to_string(planted) +
                             " planted edges");
    }
    if (target > spec.n * (spec.n - 1)) throw InfeasibleSpec("edge target exceeds the complete digraph");
}

/// Motif-node -> network-node assignment for every planted copy.
std::vector<std::vector<NodeId>> place_copies(const SynthSpec& spec) {
    CounterRng rng(derive_seed(spec.seed, kPlacementStream));
    std::vector<NodeId> order(spec.n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span<NodeId>(order));
    std::vector<std::vector<NodeId>> copies;
    const std::size_t k = spec.motif.size();
    for (std::size_t c = 0; c < spec.plant_count; ++c) {
        copies.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(c * k),
                            order.begin() + static_cast<std::ptrdiff_t>((c + 1) * k));
    }
    return copies;
}

}  // namespace

std::size_t SynthSpec::target_edges() const {
    const double raw = convention == DegreeConvention::Total ? static_cast<double>(n) * d / 2.0
                                                             : static_cast<double>(n) * d;
    return static_cast<std::size_t>(std::llround(raw));
}

std::string SynthSpec::instance_name() const {
    if (!name.empty()) return name;
    std::ostringstream out;
    out << motif.name() << "_n" << n << "_d" << d << "_r" << r_act << "_s" << seed;
    return out.str();
}

RegulatoryNetwork generate(const SynthSpec& spec) {
    validate(spec);
    const std::size_t target = spec.target_edges();

    std::set<std::pair<NodeId, NodeId>> present;
    std::vector<Edge> edges;
    for (const auto& copy : place_copies(spec)) {
        for (const auto& me : spec.motif.edges()) {
            edges.push_back({copy[me.a], copy[me.b], me.rel});
            present.emplace(copy[me.a], copy[me.b]);
        }
    }

    const std::size_t filler = target - edges.size();
    CounterRng rng(derive_seed(spec.seed, kFillerStream));
    const std::size_t max_attempts = 100 * std::max<std::size_t>(target, 1);
    std::size_t attempts = 0;
    std::vector<std::pair<NodeId, NodeId>> extra;
    while (extra.size() < filler) {
        if (++attempts > max_attempts) throw InfeasibleSpec("could not place filler edges without duplicates");
        const auto src = static_cast<NodeId>(rng.below(spec.n));
        const auto dst = static_cast<NodeId>(rng.below(spec.n));
        if (src == dst || !present.emplace(src, dst).second) continue;
        extra.emplace_back(src, dst);
    }

    const auto activations = static_cast<std::size_t>(std::llround(spec.r_act * static_cast<double>(filler)));
    std::vector<Relation> labels(filler, Relation::Repression);
    std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(activations), Relation::Activation);
    CounterRng label_rng(derive_seed(spec.seed, kLabelStream));
    label_rng.shuffle(std::span<Relation>(labels));
    for (std::size_t i = 0; i < filler; ++i) edges.push_back({extra[i].first, extra[i].second, labels[i]});

    std::vector<std::string> names;
    names.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) names.push_back(node_label(i, spec.n));
    return RegulatoryNetwork(spec.instance_name(), std::move(names), std::move(edges));
}

std::vector<std::vector<std::string>> planted_copies(const SynthSpec& spec) {
    validate(spec);
    std::vector<std::vector<std::string>> out;
    for (const auto& copy : place_copies(spec)) {
        std::vector<std::string> names;
        for (NodeId v : copy) names.push_back(node_label(v, spec.n));
        out.push_back(std::move(names));
    }
    return out;
}

std::vector<SynthSpec> parse_manifest(std::istream& in, const std::string& source) {
    std::vector<SynthSpec> specs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream tokens(line);
        std::string token;
        SynthSpec spec;
        bool any = false, have_motif = false;
        while (tokens >> token) {
            any = true;
            const auto eq = token.find('=');
            if (eq == std::string::npos) throw ParseError(source, line_no, "expected key=value, got '" + token + "'");
            const std::string key = token.substr(0, eq);
            const std::string value = token.substr(eq + 1);
            auto as_size = [&] {
                std::size_t v = 0;
                auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
                if (ec != std::errc{} || ptr != value.data() + value.size()) {
                    throw ParseError(source, line_no, "bad integer for " + key + ": " + value);
                }
                return v;
            };
            auto as_double = [&] {
                try {
                    std::size_t used = 0;
                    double v = std::stod(value, &used);
                    if (used != value.size()) throw std::invalid_argument(value);
                    return v;
                } catch (const std::exception&) {
                    throw ParseError(source, line_no, "bad number for " + key + ": " + value);
                }
            };
            if (key == "n") spec.n = as_size();
            else if (key == "d") spec.d = as_double();
            else if (key == "r") spec.r_act = as_double();
            else if (key == "plants") spec.plant_count = as_size();
            else if (key == "seed") spec.seed = as_size();
            else if (key == "name") spec.name = value;
            else if (key == "convention") {
                if (value == "total") spec.convention = DegreeConvention::Total;
                else if (value == "out") spec.convention = DegreeConvention::OutDegree;
                else throw ParseError(source, line_no, "convention must be total or out");
            } else if (key == "motif") {
                auto m = builtin_motif(value);
                if (!m) throw ParseError(source, line_no, "unknown motif " + value);
                spec.motif = *m;
                have_motif = true;
            } else {
                throw ParseError(source, line_no, "unknown key " + key);
            }
        }
        if (!any) continue;
        if (!have_motif) throw ParseError(source, line_no, "missing motif=");
        specs.push_back(std::move(spec));
    }
    return specs;
}

}  // namespace motifq
