#pragma once

#include "motifq/embedding.hpp"
#include "motifq/graph.hpp"
#include "motifq/pbo.hpp"

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

namespace motifq {

using Amplitude = std::complex<double>;

struct QaoaParams {
    std::vector<double> gammas;
    std::vector<double> betas;

    std::size_t layers() const { return gammas.size(); }
    friend bool operator==(const QaoaParams&, const QaoaParams&) = default;
};

/// 2^r amplitudes of an r-qubit register; basis index bit k is qubit k.
class Statevector {
public:
    Statevector() = default;
    Statevector(std::size_t qubits, std::vector<Amplitude> amplitudes);

    /// Computational basis state |index>.
    static Statevector basis(std::size_t qubits, std::uint64_t index);

    std::size_t qubits() const { return r_; }
    std::size_t dimension() const { return amps_.size(); }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    std::span<Amplitude> amplitudes() { return amps_; }

    double norm() const;
    std::vector<double> probabilities() const;

    /// Binary dump: r as uint64, then 2^r (re, im) pairs of float64.
    /// Little-endian hosts only.
    void write_binary(std::ostream& out) const;
    static Statevector read_binary(std::istream& in);

private:
    std::size_t r_ = 0;
    std::vector<Amplitude> amps_;
};

/// Uniform superposition over all 2^r basis states. Throws QubitCapExceeded.
Statevector initial_state(std::size_t r, std::size_t qubit_cap = kDefaultQubitCap);

/// amplitude[b] *= exp(-i * gamma * diag[b]). Throws LengthMismatch.
void apply_phase(Statevector& state, std::span<const double> diag, double gamma);

/// exp(-i * beta * X) on every qubit.
void apply_mixer(Statevector& state, double beta);

/// p alternating phase/mixer layers applied to the uniform state.
Statevector run_circuit(std::span<const double> diag, const QaoaParams& params,
                        std::size_t qubit_cap = kDefaultQubitCap);

/// <state| H_P |state> for the diagonal Hamiltonian `diag`.
double expectation(const Statevector& state, std::span<const double> diag);

struct OptimizerConfig {
    std::size_t restarts = 5;
    std::size_t max_evals = 400;
    double xtol = 1e-6;
    double ftol = 1e-6;
    double initial_step = 0.5;
    std::uint64_t seed = 0;
};

struct OptimizeResult {
    QaoaParams params;
    double expectation = 0.0;
    std::size_t evaluations = 0;
    /// Best expectation after each restart (non-increasing).
    std::vector<double> best_per_restart;
};

/// Multi-start Nelder-Mead over (gamma, beta) in 2p dimensions. Restart k
/// starts from a point drawn from its own seeded stream, so a run with more
/// restarts extends, and never worsens, one with fewer.
OptimizeResult optimize_params(std::span<const double> diag, std::size_t p, const OptimizerConfig& config,
                               std::size_t qubit_cap = kDefaultQubitCap);

struct DecodeResult {
    std::vector<EdgeId> edges;   // feasible decoded edge set
    EmbeddingSet embeddings;     // its unique non-overlapping family
    std::uint64_t raw_sample = 0;  // bitstring that produced the decoded set
    bool repaired = false;
    double f_raw = 0.0;
    double f_decoded = 0.0;
    std::size_t distinct_samples = 0;

    std::size_t motif_count() const { return embeddings.size(); }
};

/// Draws `shots` basis states from |amplitude|^2; returns state -> hit count.
std::map<std::uint64_t, std::size_t> sample_bitstrings(const Statevector& state, std::size_t shots, std::uint64_t seed);

/// Decodes sampled bitstrings, keeping the best feasible decoded set.
DecodeResult decode_samples(const std::map<std::uint64_t, std::size_t>& samples, std::span<const double> diag,
                            const RegulatoryNetwork& net, const MotifPattern& motif, const MatchOptions& opts);

/// Draws `shots` bitstrings from |amplitude|^2, decodes each through the
/// decomposition verifier (repairing infeasible ones) and keeps the decoded
/// set with the most motifs; ties go to the lexicographically least edge set.
/// Variable k is edge k of `net`.
DecodeResult sample_and_decode(const Statevector& state, std::span<const double> diag, std::size_t shots,
                               const RegulatoryNetwork& net, const MotifPattern& motif, const MatchOptions& opts,
                               std::uint64_t seed);

}  // namespace motifq
