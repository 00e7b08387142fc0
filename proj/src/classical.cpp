#include "motifq/classical.hpp"

#include "motifq/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace motifq {

namespace {

using Clock = std::chrono::steady_clock;

EmbeddingSet pick(const EmbeddingSet& embs, const std::vector<std::uint32_t>& chosen) {
    EmbeddingSet out;
    out.network_ref = embs.network_ref;
    for (auto i : chosen) out.embeddings.push_back(embs.embeddings[i]);
    std::sort(out.embeddings.begin(), out.embeddings.end());
    return out;
}

/// Fixed-width bitset over the candidate indices.
class Bits {
public:
    explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    bool none() const {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    std::size_t count_and(const Bits& o) const {
        std::size_t c = 0;
        for (std::size_t k = 0; k < words_.size(); ++k) c += static_cast<std::size_t>(std::popcount(words_[k] & o.words_[k]));
        return c;
    }
    void and_not(const Bits& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            for (std::uint64_t w = words_[k]; w; w &= w - 1) f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        }
    }

private:
    std::vector<std::uint64_t> words_;
};

class MisSearch {
public:
    MisSearch(const ConflictGraph& g, Clock::time_point deadline) : g_(g), deadline_(deadline), n_(g.vertex_count()) {
        nbr_.assign(n_, Bits(n_));
        for (std::uint32_t v = 0; v < n_; ++v) {
            for (auto u : g.adjacency[v]) nbr_[v].set(u);
        }
    }

    void run() {
        Bits all(n_);
        for (std::size_t v = 0; v < n_; ++v) all.set(v);
        std::vector<std::uint32_t> current;
        expand(all, current);
    }

    void set_incumbent(std::vector<std::uint32_t> solution) { best_ = std::move(solution); }

    const std::vector<std::uint32_t>& best() const { return best_; }
    bool timed_out() const { return timed_out_; }

private:
    // Upper bound: vertices of P partitioned greedily into conflict cliques.
    std::size_t clique_cover(const Bits& p) const {
        std::vector<Bits> cliques;
        p.for_each([&](std::size_t v) {
            for (auto& c : cliques) {
                // v joins c only if it conflicts with every member.
                if (c.count_and(nbr_[v]) == c.count()) {
                    c.set(v);
                    return;
                }
            }
            cliques.emplace_back(n_);
            cliques.back().set(v);
        });
        return cliques.size();
    }

    void expand(Bits p, std::vector<std::uint32_t>& current) {
        if (timed_out_) return;
        if ((++nodes_ & 0x3FF) == 0 && Clock::now() > deadline_) {
            timed_out_ = true;
            return;
        }
        if (p.none()) {
            if (current.size() > best_.size()) best_ = current;
            return;
        }
        if (current.size() + clique_cover(p) <= best_.size()) return;

        std::size_t pivot = n_, pivot_deg = 0;
        p.for_each([&](std::size_t v) {
            const std::size_t d = nbr_[v].count_and(p);
            if (pivot == n_ || d > pivot_deg) {
                pivot = v;
                pivot_deg = d;
            }
        });
        if (pivot_deg == 0) {
            // Remaining candidates are mutually compatible.
            const std::size_t before = current.size();
            p.for_each([&](std::size_t v) { current.push_back(static_cast<std::uint32_t>(v)); });
            if (current.size() > best_.size()) best_ = current;
            current.resize(before);
            return;
        }

        Bits with = p;
        with.reset(pivot);
        with.and_not(nbr_[pivot]);
        current.push_back(static_cast<std::uint32_t>(pivot));
        expand(with, current);
        current.pop_back();

        p.reset(pivot);
        expand(std::move(p), current);
    }

    const ConflictGraph& g_;
    Clock::time_point deadline_;
    std::size_t n_;
    std::vector<Bits> nbr_;
    std::vector<std::uint32_t> best_;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

std::vector<std::uint32_t> least_loss_greedy(const ConflictGraph& g, LossMode mode) {
    const std::size_t n = g.vertex_count();
    std::vector<char> available(n, 1);
    std::vector<std::size_t> static_loss(n);
    for (std::size_t i = 0; i < n; ++i) static_loss[i] = g.adjacency[i].size();

    std::vector<std::uint32_t> chosen;
    for (;;) {
        std::size_t best = n, best_loss = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!available[i]) continue;
            std::size_t loss = static_loss[i];
            if (mode == LossMode::Dynamic) {
                loss = 0;
                for (auto u : g.adjacency[i]) loss += available[u] ? 1 : 0;
            }
            // Candidates are sorted by edge set, so the first minimum wins ties.
            if (best == n || loss < best_loss) {
                best = i;
                best_loss = loss;
            }
        }
        if (best == n) break;
        chosen.push_back(static_cast<std::uint32_t>(best));
        available[best] = 0;
        for (auto u : g.adjacency[best]) available[u] = 0;
    }
    return chosen;
}

}  // namespace

SolverResult baseline_greedy(const EmbeddingSet& embs, LossMode mode) {
    const auto start = Clock::now();
    const auto chosen = least_loss_greedy(build_conflict_graph(embs), mode);

    SolverResult result;
    result.selected = pick(embs, chosen);
    result.method = mode == LossMode::Dynamic ? "baseline" : "baseline-static";
    result.elapsed = Clock::now() - start;
    return result;
}

SolverResult exact_mis(const EmbeddingSet& embs, std::chrono::milliseconds budget, std::size_t cap) {
    if (embs.size() > cap) {
        throw SolverCapExceeded(embs.size(), cap);
    }
    const auto start = Clock::now();
    const auto g = build_conflict_graph(embs);
    MisSearch search(g, start + budget);
    search.set_incumbent(least_loss_greedy(g, LossMode::Dynamic));
    search.run();

    SolverResult result;
    result.selected = pick(embs, search.best());
    result.method = "exact";
    result.proven_optimal = !search.timed_out();
    result.elapsed = Clock::now() - start;
    return result;
}

}  // namespace motifq
