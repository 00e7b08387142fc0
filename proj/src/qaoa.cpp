#include "motifq/qaoa.hpp"

#include "motifq/errors.hpp"
#include "motifq/nelder_mead.hpp"
#include "motifq/rng.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>

namespace motifq {

namespace {

// Stream ids for derive_seed; optimizer restarts use kOptimizerStream + k.
constexpr std::uint64_t kSamplingStream = 1;
constexpr std::uint64_t kOptimizerStream = 1000;

}  // namespace

Statevector::Statevector(std::size_t qubits, std::vector<Amplitude> amplitudes)
    : r_(qubits), amps_(std::move(amplitudes)) {
    if (amps_.size() != (std::size_t{1} << r_)) throw LengthMismatch(std::size_t{1} << r_, amps_.size());
}

Statevector Statevector::basis(std::size_t qubits, std::uint64_t index) {
    std::vector<Amplitude> amps(std::size_t{1} << qubits);
    amps.at(index) = 1.0;
    return Statevector(qubits, std::move(amps));
}

double Statevector::norm() const {
    double total = 0.0;
    for (const auto& a : amps_) total += std::norm(a);
    return std::sqrt(total);
}

std::vector<double> Statevector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t b = 0; b < amps_.size(); ++b) p[b] = std::norm(amps_[b]);
    return p;
}

void Statevector::write_binary(std::ostream& out) const {
    const std::uint64_t r = r_;
    out.write(reinterpret_cast<const char*>(&r), sizeof r);
    for (const auto& a : amps_) {
        const double parts[2] = {a.real(), a.imag()};
        out.write(reinterpret_cast<const char*>(parts), sizeof parts);
    }
}

Statevector Statevector::read_binary(std::istream& in) {
    std::uint64_t r = 0;
    in.read(reinterpret_cast<char*>(&r), sizeof r);
    if (!in || r > 40) throw Error("corrupt statevector dump");
    std::vector<Amplitude> amps(std::size_t{1} << r);
    for (auto& a : amps) {
        double parts[2];
        in.read(reinterpret_cast<char*>(parts), sizeof parts);
        if (!in) throw Error("truncated statevector dump");
        a = {parts[0], parts[1]};
    }
    return Statevector(r, std::move(amps));
}

Statevector initial_state(std::size_t r, std::size_t qubit_cap) {
    if (r > qubit_cap) throw QubitCapExceeded(r, qubit_cap);
    const std::size_t dim = std::size_t{1} << r;
    const double amp = std::pow(2.0, -0.5 * static_cast<double>(r));
    return Statevector(r, std::vector<Amplitude>(dim, Amplitude(amp, 0.0)));
}

void apply_phase(Statevector& state, std::span<const double> diag, double gamma) {
    if (diag.size() != state.dimension()) throw LengthMismatch(state.dimension(), diag.size());
    auto amps = state.amplitudes();
    for (std::size_t b = 0; b < amps.size(); ++b) amps[b] *= std::polar(1.0, -gamma * diag[b]);
}

void apply_mixer(Statevector& state, double beta) {
    const double c = std::cos(beta);
    const Amplitude minus_i_s(0.0, -std::sin(beta));
    auto amps = state.amplitudes();
    const std::size_t dim = amps.size();
    for (std::size_t k = 0; k < state.qubits(); ++k) {
        const std::size_t bit = std::size_t{1} << k;
        for (std::size_t b = 0; b < dim; ++b) {
            if (b & bit) continue;
            const Amplitude a0 = amps[b];
            const Amplitude a1 = amps[b | bit];
            amps[b] = c * a0 + minus_i_s * a1;
            amps[b | bit] = c * a1 + minus_i_s * a0;
        }
    }
}

Statevector run_circuit(std::span<const double> diag, const QaoaParams& params, std::size_t qubit_cap) {
    if (params.gammas.size() != params.betas.size()) throw LengthMismatch(params.gammas.size(), params.betas.size());
    std::size_t r = 0;
    while ((std::size_t{1} << r) < diag.size()) ++r;
    if ((std::size_t{1} << r) != diag.size()) throw LengthMismatch(std::size_t{1} << r, diag.size());
    auto state = initial_state(r, qubit_cap);
    for (std::size_t j = 0; j < params.layers(); ++j) {
        apply_phase(state, diag, params.gammas[j]);
        apply_mixer(state, params.betas[j]);
    }
    return state;
}

double expectation(const Statevector& state, std::span<const double> diag) {
    if (diag.size() != state.dimension()) throw LengthMismatch(state.dimension(), diag.size());
    double total = 0.0;
    auto amps = state.amplitudes();
    for (std::size_t b = 0; b < amps.size(); ++b) total += std::norm(amps[b]) * diag[b];
    return total;
}

OptimizeResult optimize_params(std::span<const double> diag, std::size_t p, const OptimizerConfig& config,
                               std::size_t qubit_cap) {
    OptimizeResult result;
    auto unpack = [p](const std::vector<double>& x) {
        QaoaParams params;
        params.gammas.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(p));
        params.betas.assign(x.begin() + static_cast<std::ptrdiff_t>(p), x.end());
        return params;
    };
    auto objective = [&](const std::vector<double>& x) {
        return expectation(run_circuit(diag, unpack(x), qubit_cap), diag);
    };

    NelderMeadOptions nm;
    nm.max_evals = config.max_evals;
    nm.xtol = config.xtol;
    nm.ftol = config.ftol;
    nm.initial_step = config.initial_step;

    bool have_best = false;
    for (std::size_t k = 0; k < std::max<std::size_t>(config.restarts, 1); ++k) {
        CounterRng rng(derive_seed(config.seed, kOptimizerStream + k));
        std::vector<double> x0(2 * p);
        for (std::size_t j = 0; j < p; ++j) x0[j] = rng.uniform(0.0, 2.0 * std::numbers::pi);
        for (std::size_t j = 0; j < p; ++j) x0[p + j] = rng.uniform(0.0, std::numbers::pi);
        auto run = nelder_mead(objective, x0, nm);
        result.evaluations += run.evals;
        if (!have_best || run.fx < result.expectation) {
            result.params = unpack(run.x);
            result.expectation = run.fx;
            have_best = true;
        }
        result.best_per_restart.push_back(result.expectation);
    }
    return result;
}

std::map<std::uint64_t, std::size_t> sample_bitstrings(const Statevector& state, std::size_t shots, std::uint64_t seed) {
    std::vector<double> cdf = state.probabilities();
    for (std::size_t b = 1; b < cdf.size(); ++b) cdf[b] += cdf[b - 1];
    const double total = cdf.back();

    CounterRng rng(derive_seed(seed, kSamplingStream));
    std::map<std::uint64_t, std::size_t> hits;
    for (std::size_t s = 0; s < std::max<std::size_t>(shots, 1); ++s) {
        const double u = rng.uniform() * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        auto b = std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1);
        ++hits[static_cast<std::uint64_t>(b)];
    }
    return hits;
}

DecodeResult decode_samples(const std::map<std::uint64_t, std::size_t>& samples, std::span<const double> diag,
                            const RegulatoryNetwork& net, const MotifPattern& motif, const MatchOptions& opts) {
    const std::size_t r = net.edge_count();
    if (diag.size() != (std::size_t{1} << r)) throw LengthMismatch(std::size_t{1} << r, diag.size());

    DecodeResult best;
    bool have_best = false;
    for (const auto& [mask, count] : samples) {
        auto edges = mask_to_edges(mask, r);
        auto check = verify_edge_decomposition(net, motif, edges, opts);
        bool repaired = false;
        if (!check.feasible) {
            edges = repair_to_feasible(net, motif, edges, opts);
            check = verify_edge_decomposition(net, motif, edges, opts);
            repaired = true;
        }
        const std::size_t motifs = check.witness.size();
        if (!have_best || motifs > best.motif_count() || (motifs == best.motif_count() && edges < best.edges)) {
            best.edges = edges;
            best.embeddings = std::move(check.witness);
            best.raw_sample = mask;
            best.repaired = repaired;
            best.f_raw = diag[mask];
            best.f_decoded = diag[edges_to_mask(edges)];
            have_best = true;
        }
    }
    best.distinct_samples = samples.size();
    return best;
}

DecodeResult sample_and_decode(const Statevector& state, std::span<const double> diag, std::size_t shots,
                               const RegulatoryNetwork& net, const MotifPattern& motif, const MatchOptions& opts,
                               std::uint64_t seed) {
    if (state.qubits() != net.edge_count()) throw LengthMismatch(net.edge_count(), state.qubits());
    if (diag.size() != state.dimension()) throw LengthMismatch(state.dimension(), diag.size());
    return decode_samples(sample_bitstrings(state, shots, seed), diag, net, motif, opts);
}

}  // namespace motifq
