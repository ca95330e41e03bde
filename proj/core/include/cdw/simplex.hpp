#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace cdw::optim {

struct SimplexOptions {
    std::size_t max_evals = 20000;
    double f_tol = 1e-15;        // spread of f over the simplex
    double x_tol = 1e-10;        // max vertex distance from the best vertex
    double initial_step = 0.1;   // edge length of the starting simplex
    bool adaptive = true;        // dimension-dependent coefficients (Gao & Han 2012)
};

struct SimplexResult {
    std::vector<double> x;
    double f = 0.0;
    std::size_t evals = 0;
    bool converged = false;
};

using Objective = std::function<double(const std::vector<double>&)>;

// Maps a trial point back onto the feasible set in place.
using Projection = std::function<void(std::vector<double>&)>;

// Derivative-free Nelder-Mead minimization (reflection, expansion,
// contraction, shrink). Every trial point is passed through `project`
// before it is evaluated and stored.
[[nodiscard]] SimplexResult nelder_mead(const Objective& f, std::vector<double> x0,
                                        const SimplexOptions& opts = {},
                                        const Projection& project = {});

}  // namespace cdw::optim
