#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace motifq {

struct NelderMeadOptions {
    std::size_t max_evals = 400;
    double xtol = 1e-6;
    double ftol = 1e-6;
    double initial_step = 0.5;
};

struct NelderMeadResult {
    std::vector<double> x;
    double fx = 0.0;
    std::size_t evals = 0;
    bool converged = false;
};

/// Downhill simplex minimization (reflection 1, expansion 2, contraction
/// 1/2, shrink 1/2). Stops when both the spread of simplex values is within
/// ftol and every vertex lies within xtol of the best one, or when the
/// evaluation budget is spent; the best point seen is returned either way.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                             const NelderMeadOptions& opts = {});

}  // namespace motifq
