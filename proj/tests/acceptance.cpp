// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include "motifq/cli.hpp"
#include "motifq/classical.hpp"
#include "motifq/embedding.hpp"
#include "motifq/io.hpp"
#include "motifq/pbo.hpp"
#include "motifq/pipeline.hpp"
#include "motifq/qaoa.hpp"
#include "motifq/stats.hpp"
#include "motifq/synthgen.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace motifq;
using namespace testsupport;

namespace {

using Clock = std::chrono::steady_clock;

// Pinned tolerances and sizes.
constexpr std::size_t kOracleInstances = 60;
constexpr std::size_t kMaxOracleEdges = 10;
constexpr std::size_t kQaoaInstances = 50;
constexpr double kQaoaMatchRate = 0.80;
constexpr double kQaoaSecondsPerInstance = 60.0;
constexpr double kNormTol = 1e-10;
constexpr double kNumericTol = 1e-9;
constexpr std::size_t kNormTrials = 100;
constexpr std::size_t kVerifierGraphs = 20;
constexpr std::size_t kMaxVerifierEdges = 12;
constexpr std::size_t kConflictInstances = 200;
constexpr double kRatioTol = 0.02;
constexpr std::size_t kNullReplicates = 50;
constexpr std::size_t kRandomSeeds = 20;
constexpr double kNeutralShare = 0.90;

int failures = 0;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

void report(bool ok, const std::string& id, const std::string& detail) {
    std::cout << (ok ? "PASS  " : "FAIL  ") << id << "  " << detail << std::endl;
    if (!ok) ++failures;
}

std::string fmt(double v, int digits = 3) {
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

/// Small instance: either a uniform random graph, or overlapping motif
/// copies plus noise. Always at most `max_edges` edges.
RegulatoryNetwork small_instance(const MotifPattern& m, std::uint64_t seed, std::size_t max_edges, bool planted) {
    std::mt19937_64 gen(seed);
    for (std::uint64_t attempt = 0;; ++attempt) {
        if (!planted) {
            const std::size_t n = 5 + gen() % 3;
            const std::size_t e = 7 + gen() % (max_edges - 6);
            return random_network(n, e, seed * 7919 + attempt, 0.3);
        }
        const std::size_t n = m.size() + 2 + gen() % 3;
        const std::size_t copies = m.size() == 3 ? 2 + gen() % 2 : 2;
        std::vector<std::vector<std::size_t>> hosts;
        for (std::size_t c = 0; c < copies; ++c) {
            std::vector<std::size_t> nodes(n);
            std::iota(nodes.begin(), nodes.end(), 0);
            std::shuffle(nodes.begin(), nodes.end(), gen);
            nodes.resize(m.size());
            hosts.push_back(nodes);
        }
        auto net = planted_network(m, hosts, n, gen() % 3, seed * 104729 + attempt);
        if (net.edge_count() <= max_edges && !enumerate_embeddings(net, m).empty()) return net;
    }
}

struct Instance {
    MotifPattern motif;
    RegulatoryNetwork net;
};

std::vector<Instance> oracle_instances() {
    std::vector<Instance> out;
    const auto motifs = builtin_motifs();
    for (std::size_t k = 0; k < kOracleInstances; ++k) {
        const auto& m = motifs[k % motifs.size()];
        out.push_back({m, small_instance(m, 1 + k, kMaxOracleEdges, k % 3 != 2)});
    }
    return out;
}

// --- criteria ------------------------------------------------------------------

void oracle_equivalence_and_argmin(const std::vector<Instance>& instances) {
    const auto start = Clock::now();
    std::size_t assignments = 0, mismatches = 0, feasible_seen = 0, argmin_mismatch = 0, max_edges = 0;
    std::set<std::string> motifs;
    for (const auto& [m, net] : instances) {
        motifs.insert(m.name());
        max_edges = std::max(max_edges, net.edge_count());
        const std::size_t r = net.edge_count();
        const auto pen = Penalties::defaults_for(r);
        const double a = std::min(pen.a1, pen.a2);
        const auto obj = assemble_objective(net, m, pen, HMode::Orbit);
        const auto table = objective_table(obj.f, r);
        for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
            ++assignments;
            const auto edges = mask_to_edges(mask, r);
            const double size = static_cast<double>(edges.size());
            const bool feasible = verify_edge_decomposition(net, m, edges).feasible;
            feasible_seen += feasible;
            const bool ok = feasible ? table[mask] == -size : table[mask] >= -size + a;
            mismatches += !ok;
        }
        const auto best = static_cast<std::uint64_t>(std::min_element(table.begin(), table.end()) - table.begin());
        const auto decomposition = verify_edge_decomposition(net, m, mask_to_edges(best, r));
        const auto exact = exact_mis(enumerate_embeddings(net, m));
        if (!decomposition.feasible || decomposition.witness.size() != exact.motif_count() || !exact.proven_optimal) {
            ++argmin_mismatch;
        }
    }
    const double secs = seconds_since(start);
    report(mismatches == 0 && instances.size() >= 50 && motifs.size() == 4 && max_edges <= kMaxOracleEdges && secs < 300,
           "oracle-equivalence",
           std::to_string(instances.size()) + " instances (" + std::to_string(motifs.size()) + " motifs, |E|<=" +
               std::to_string(max_edges) + "), " + std::to_string(assignments) + " assignments, " +
               std::to_string(feasible_seen) + " feasible, " + std::to_string(mismatches) + " mismatches, " +
               fmt(secs) + " s");
    report(argmin_mismatch == 0, "theorem2-argmin",
           std::to_string(instances.size() - argmin_mismatch) + "/" + std::to_string(instances.size()) +
               " argmin counts equal the exact optimum");
}

void qaoa_end_to_end() {
    const auto motifs = builtin_motifs();
    std::size_t equal = 0, exceeded = 0, unverified = 0, max_edges = 0;
    double slowest = 0;
    for (std::size_t k = 0; k < kQaoaInstances; ++k) {
        const auto& m = motifs[k % motifs.size()];
        const auto net = small_instance(m, 5000 + k, kMaxOracleEdges, true);
        max_edges = std::max(max_edges, net.edge_count());
        RunConfig exact_cfg;
        exact_cfg.solver = SolverKind::Exact;
        const auto exact = run_identification(net, m, exact_cfg);

        RunConfig cfg;
        cfg.solver = SolverKind::Qaoa;
        cfg.p = 2;
        cfg.restarts = 5;
        cfg.shots = 1024;
        cfg.seed = k;
        const auto t = Clock::now();
        const auto rep = run_identification(net, m, cfg);
        slowest = std::max(slowest, seconds_since(t));
        bool fallback = false;
        for (const auto& p : rep.parts) fallback = fallback || p.fallback;

        const auto check = verify_edge_decomposition(net, m, rep.embeddings.edge_union());
        if (!check.feasible || check.witness.size() != rep.motif_count || fallback) ++unverified;
        if (rep.motif_count == exact.motif_count) ++equal;
        if (rep.motif_count > exact.motif_count) ++exceeded;
    }
    const double rate = static_cast<double>(equal) / kQaoaInstances;
    report(rate >= kQaoaMatchRate && exceeded == 0 && unverified == 0 && slowest < kQaoaSecondsPerInstance,
           "qaoa-end-to-end",
           std::to_string(equal) + "/" + std::to_string(kQaoaInstances) + " equal exact (need >= " +
               fmt(kQaoaMatchRate * 100) + "%), " + std::to_string(exceeded) + " exceed, " + std::to_string(unverified) +
               " unverified, |E|<=" + std::to_string(max_edges) + ", slowest " + fmt(slowest) + " s");
}

void simulator_numerics(const std::vector<Instance>& instances) {
    std::mt19937_64 gen(314159);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    std::uniform_real_distribution<double> value(-50.0, 50.0);

    double norm_dev = 0;
    std::size_t max_r = 0;
    for (std::size_t t = 0; t < kNormTrials; ++t) {
        const std::size_t r = 1 + t % 16;
        max_r = std::max(max_r, r);
        std::vector<double> diag(std::size_t{1} << r);
        for (auto& d : diag) d = value(gen);
        auto s = initial_state(r, 16);
        for (int layer = 0; layer < 2; ++layer) {
            apply_phase(s, diag, angle(gen));
            norm_dev = std::max(norm_dev, std::abs(s.norm() - 1.0));
            apply_mixer(s, angle(gen) / 2);
            norm_dev = std::max(norm_dev, std::abs(s.norm() - 1.0));
        }
    }

    double mean_dev = 0, phase_dev = 0, spin_dev = 0;
    for (const auto& [m, net] : instances) {
        const std::size_t r = net.edge_count();
        const auto obj = assemble_objective(net, m, Penalties::defaults_for(r), HMode::Orbit);
        const auto table = objective_table(obj.f, r);
        double mean = 0;
        for (double v : table) mean += v;
        mean /= static_cast<double>(table.size());
        mean_dev = std::max(mean_dev, std::abs(expectation(run_circuit(table, {}), table) - mean));

        auto s = initial_state(r);
        apply_phase(s, table, 1.0);
        const double amp = std::pow(2.0, -0.5 * static_cast<double>(r));
        for (std::uint64_t b = 0; b < table.size(); ++b) {
            const auto want = amp * std::exp(std::complex<double>(0, -obj.f.evaluate_mask(b)));
            phase_dev = std::max(phase_dev, std::abs(s.amplitudes()[b] - want));
        }
    }
    for (std::size_t r = 1; r <= 6; ++r) {
        for (int trial = 0; trial < 5; ++trial) {
            PseudoBooleanPolynomial poly(r);
            for (int t = 0; t < 20; ++t) {
                std::vector<std::uint32_t> vars;
                for (std::uint32_t v = 0; v < r; ++v) {
                    if (gen() % 2) vars.push_back(v);
                }
                poly.add_term(vars, std::round(value(gen)));
            }
            poly.add_constant(std::round(value(gen)));
            const auto spins = spin_expansion(poly);
            const auto table = objective_table(poly, r);
            for (std::uint64_t b = 0; b < table.size(); ++b) spin_dev = std::max(spin_dev, std::abs(spin_value(spins, b) - table[b]));
        }
    }
    report(norm_dev < kNormTol && mean_dev < kNumericTol && phase_dev < kNumericTol && spin_dev < kNumericTol,
           "simulator-numerics",
           "norm dev " + fmt(norm_dev) + " (" + std::to_string(kNormTrials) + " trials, r<=" + std::to_string(max_r) +
               "), p=0 mean dev " + fmt(mean_dev) + ", phase dev " + fmt(phase_dev) + ", spin expansion dev " +
               fmt(spin_dev));
}

void verifier_exhaustiveness() {
    const auto motifs = builtin_motifs();
    std::size_t subsets = 0, disagreements = 0, feasible = 0, max_edges = 0;
    for (std::size_t k = 0; k < kVerifierGraphs; ++k) {
        const auto& m = motifs[k % motifs.size()];
        const auto net = small_instance(m, 9000 + k, kMaxVerifierEdges, k % 4 != 3);
        max_edges = std::max(max_edges, net.edge_count());
        for (std::uint64_t mask = 0; mask < (1ULL << net.edge_count()); ++mask) {
            ++subsets;
            const auto edges = mask_edges(mask);
            const bool got = verify_edge_decomposition(net, m, edges).feasible;
            feasible += got;
            disagreements += got != brute_partition(net, m, edges);
        }
    }
    report(disagreements == 0 && max_edges <= kMaxVerifierEdges, "verifier-exhaustive",
           std::to_string(kVerifierGraphs) + " graphs (|E|<=" + std::to_string(max_edges) + "), " +
               std::to_string(subsets) + " subsets, " + std::to_string(feasible) + " feasible, " +
               std::to_string(disagreements) + " disagreements");
}

void baseline_dominance() {
    std::size_t violations = 0, strict = 0, oracle_mismatch = 0;
    const auto motifs = builtin_motifs();
    for (std::size_t k = 0; k < kConflictInstances; ++k) {
        const auto& m = motifs[k % motifs.size()];
        auto net = random_network(7 + k % 6, 14 + k % 17, 20000 + k, 0.35);
        auto embs = enumerate_embeddings(net, m);
        if (embs.size() > 20) embs.embeddings.resize(20);
        const auto greedy = baseline_greedy(embs);
        const auto exact = exact_mis(embs);
        violations += greedy.motif_count() > exact.motif_count() || !greedy.selected.non_overlapping() ||
                      !exact.selected.non_overlapping();
        strict += greedy.motif_count() < exact.motif_count();
        oracle_mismatch += exact.motif_count() != brute_max_disjoint(embs.embeddings);
    }
    std::size_t disjoint_mismatch = 0, disjoint_total = 0;
    for (std::size_t k = 0; k < 20; ++k) {
        const auto& m = motifs[k % motifs.size()];
        const std::size_t copies = 1 + k % 6;
        std::vector<std::vector<std::size_t>> hosts;
        for (std::size_t c = 0; c < copies; ++c) {
            std::vector<std::size_t> h;
            for (std::size_t i = 0; i < m.size(); ++i) h.push_back(c * m.size() + i);
            hosts.push_back(h);
        }
        const auto net = planted_network(m, hosts, copies * m.size(), 0, k);
        const auto embs = enumerate_embeddings(net, m);
        ++disjoint_total;
        disjoint_mismatch += baseline_greedy(embs).motif_count() != exact_mis(embs).motif_count() ||
                             exact_mis(embs).motif_count() != copies;
    }
    report(violations == 0 && oracle_mismatch == 0 && disjoint_mismatch == 0, "baseline-dominance",
           std::to_string(kConflictInstances) + " conflict instances: " + std::to_string(violations) +
               " violations, greedy strictly worse on " + std::to_string(strict) + ", exact vs brute-force mismatches " +
               std::to_string(oracle_mismatch) + "; disjoint planted " +
               std::to_string(disjoint_total - disjoint_mismatch) + "/" + std::to_string(disjoint_total) + " equal");
}

void generator_statistics() {
    double worst_ratio = 0;
    std::size_t specs = 0, missing_plants = 0, nonreproducible = 0;
    const auto motifs = builtin_motifs();
    for (double r : {0.0, 0.2, 0.5, 0.73, 1.0}) {
        for (std::size_t n : {1000u, 2000u}) {
            SynthSpec s;
            s.motif = motifs[specs % motifs.size()];
            s.n = n;
            s.d = n == 1000 ? 4.0 : 2.0;
            s.r_act = r;
            s.plant_count = 10;
            s.seed = 700 + specs;
            ++specs;
            const auto net = generate(s);

            std::set<std::pair<NodeId, NodeId>> planted_pairs;
            const auto found = enumerate_embeddings(net, s.motif);
            for (const auto& copy : planted_copies(s)) {
                EdgeSet es;
                for (const auto& e : s.motif.edges()) {
                    const NodeId a = *net.find_node(copy[e.a]), b = *net.find_node(copy[e.b]);
                    planted_pairs.emplace(a, b);
                    es.push_back(*net.find_edge(a, b));
                }
                std::sort(es.begin(), es.end());
                const bool seen = std::any_of(found.embeddings.begin(), found.embeddings.end(),
                                              [&](const Embedding& x) { return x.edge_ids == es; });
                missing_plants += !seen || !is_embedding(net, s.motif, es);
            }
            std::size_t filler = 0, act = 0;
            for (const auto& e : net.edges()) {
                if (planted_pairs.count({e.src, e.dst})) continue;
                ++filler;
                act += e.rel == Relation::Activation;
            }
            worst_ratio = std::max(worst_ratio, std::abs(static_cast<double>(act) / static_cast<double>(filler) - r));

            std::ostringstream a, b;
            write_network(a, net);
            write_network(b, generate(s));
            nonreproducible += a.str() != b.str();
        }
    }
    report(worst_ratio <= kRatioTol && missing_plants == 0 && nonreproducible == 0, "generator-statistics",
           std::to_string(specs) + " specs (n*d >= 2000): worst activation deviation " + fmt(worst_ratio) +
               ", missing planted copies " + std::to_string(missing_plants) + ", non-reproducible " +
               std::to_string(nonreproducible));
}

void significance_direction() {
    RunConfig cfg;
    cfg.solver = SolverKind::Exact;

    SynthSpec planted;
    planted.motif = *builtin_motif("ffl");
    planted.n = 150;
    planted.d = 1.0;
    planted.plant_count = 10;
    planted.seed = 2024;
    const auto net = generate(planted);
    const auto z = zscore(net, planted.motif, kNullReplicates, cfg, 11, NullModel::DegreePreserving);

    std::size_t neutral = 0;
    std::ostringstream zs;
    for (std::uint64_t seed = 1; seed <= kRandomSeeds; ++seed) {
        SynthSpec rnd;
        rnd.motif = *builtin_motif("ffl");
        rnd.n = 60;
        rnd.d = 4.0;
        rnd.plant_count = 0;
        rnd.seed = 3000 + seed;
        const auto g = generate(rnd);
        const auto rz = zscore(g, rnd.motif, kNullReplicates, cfg, seed, NullModel::DegreePreserving);
        neutral += std::abs(rz.z) <= 2.0;
        zs << (seed > 1 ? "," : "") << fmt(rz.z, 2);
    }
    const double share = static_cast<double>(neutral) / kRandomSeeds;
    report(z.z > 2.0 && share >= kNeutralShare, "significance-direction",
           "planted FFLs z=" + fmt(z.z) + " (observed " + std::to_string(z.observed) + ", null mean " + fmt(z.null_mean) +
               ", N=" + std::to_string(kNullReplicates) + "); random graphs |z|<=2 on " + std::to_string(neutral) + "/" +
               std::to_string(kRandomSeeds) + " [" + zs.str() + "]");
}

void reproducibility() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "motifq_acceptance_replay";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream m(dir / "manifest.txt");
        m << "n=40 d=2 r=0.5 motif=ffl plants=4 seed=1 name=a\n"
             "n=40 d=2.5 r=0.6 motif=cascade plants=3 seed=2 name=b\n"
             "n=50 d=2 r=0.4 motif=bifan plants=3 seed=3 name=c\n"
             "n=50 d=2 r=0.5 motif=biparallel plants=3 seed=4 name=d\n";
    }
    std::ostringstream sink, err;
    bool ok = cli_main({"generate", "--manifest", (dir / "manifest.txt").string(), "--out-dir", dir.string()}, sink, err) == 0;
    const std::vector<std::pair<std::string, std::string>> runs{
        {"a", "ffl"}, {"b", "cascade"}, {"c", "bifan"}, {"d", "biparallel"}};
    std::size_t reports = 0, identical = 0;
    for (const auto& [name, motif] : runs) {
        for (const std::string solver : {"qaoa", "baseline", "exact"}) {
            const auto first = (dir / (name + "_" + solver + ".json")).string();
            const auto second = (dir / (name + "_" + solver + "_replay.json")).string();
            ok = ok && cli_main({"find", "--net", (dir / (name + ".tsv")).string(), "--motif", motif, "--solver", solver,
                                 "--seed", "17", "--out", first},
                                sink, err) == 0;
            ok = ok && cli_main({"find", "--replay", first, "--out", second}, sink, err) == 0;
            std::ifstream a(first, std::ios::binary), b(second, std::ios::binary);
            std::stringstream sa, sb;
            sa << a.rdbuf();
            sb << b.rdbuf();
            ++reports;
            identical += !sa.str().empty() && sa.str() == sb.str();
        }
    }
    fs::remove_all(dir);
    report(ok && identical == reports, "reproducibility",
           std::to_string(identical) + "/" + std::to_string(reports) + " replayed reports byte-identical" +
               (err.str().empty() ? "" : " (stderr: " + err.str() + ")"));
}

}  // namespace

int main() {
    const auto start = Clock::now();
    const auto instances = oracle_instances();
    oracle_equivalence_and_argmin(instances);
    qaoa_end_to_end();
    simulator_numerics(instances);
    verifier_exhaustiveness();
    baseline_dominance();
    generator_statistics();
    significance_direction();
    reproducibility();
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(failures) + " CRITERIA FAILED") << " in "
              << fmt(seconds_since(start)) << " s" << std::endl;
    return failures == 0 ? 0 : 1;
}
