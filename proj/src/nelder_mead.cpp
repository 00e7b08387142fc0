#include "motifq/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace motifq {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                             const NelderMeadOptions& opts) {
    const std::size_t n = x0.size();
    NelderMeadResult best;
    auto eval = [&](const std::vector<double>& x) {
        double v = f(x);
        ++best.evals;
        if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
        if (best.x.empty() || v < best.fx) {
            best.x = x;
            best.fx = v;
        }
        return v;
    };

    if (n == 0) {
        eval(x0);
        best.converged = true;
        return best;
    }

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += opts.initial_step;
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n && best.evals < opts.max_evals; ++i) values[i] = eval(simplex[i]);
    if (best.evals < n + 1) return best;

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    auto along = [&](double t, std::vector<double>& out) {
        // centroid + t * (centroid - worst)
        const auto& worst = simplex[order[n]];
        for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + t * (centroid[j] - worst[j]);
    };

    while (best.evals < opts.max_evals) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

        const double f_best = values[order[0]];
        const double f_worst = values[order[n]];
        double size = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                size = std::max(size, std::abs(simplex[order[i]][j] - simplex[order[0]][j]));
            }
        }
        if (std::abs(f_worst - f_best) <= opts.ftol && size <= opts.xtol) {
            best.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[order[i]][j] / static_cast<double>(n);
        }

        along(1.0, trial);
        const double f_reflect = eval(trial);
        const std::size_t w = order[n];
        if (f_reflect < f_best) {
            if (best.evals >= opts.max_evals) break;
            along(2.0, trial2);
            const double f_expand = eval(trial2);
            if (f_expand < f_reflect) {
                simplex[w] = trial2;
                values[w] = f_expand;
            } else {
                simplex[w] = trial;
                values[w] = f_reflect;
            }
            continue;
        }
        if (f_reflect < values[order[n - 1]]) {
            simplex[w] = trial;
            values[w] = f_reflect;
            continue;
        }
        if (best.evals >= opts.max_evals) break;
        // Outside contraction when the reflection improved on the worst point, inside otherwise.
        const bool outside = f_reflect < f_worst;
        along(outside ? 0.5 : -0.5, trial2);
        const double f_contract = eval(trial2);
        if (f_contract < (outside ? f_reflect : f_worst)) {
            simplex[w] = trial2;
            values[w] = f_contract;
            continue;
        }
        const auto& anchor = simplex[order[0]];
        for (std::size_t i = 1; i <= n && best.evals < opts.max_evals; ++i) {
            auto& v = simplex[order[i]];
            for (std::size_t j = 0; j < n; ++j) v[j] = anchor[j] + 0.5 * (v[j] - anchor[j]);
            values[order[i]] = eval(v);
        }
    }
    return best;
}

}  // namespace motifq
