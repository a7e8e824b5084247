#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace csnet {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;  // estimated
    bool converged = false;
    std::size_t evals = 0;
};

// Globally adaptive Gauss-Kronrod 7/15 on [lo, hi]: repeatedly bisects the
// interval with the worst error estimate until the summed estimate meets
// max(abs_tol, rel_tol * |value|) or the interval budget runs out.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                              double rel_tol, double abs_tol,
                              std::size_t max_intervals = 4000);

// Same, but the initial intervals are the consecutive pairs of `points`
// (strictly increasing). Use it to cut the domain along known kinks so each
// interval holds a smooth piece.
QuadResult integrate_breakpoints(const std::function<double(double)>& f,
                                 const std::vector<double>& points, double rel_tol,
                                 double abs_tol, std::size_t max_intervals = 4000);

// Sorts, deduplicates, and clips candidate breakpoints into [lo, hi],
// always keeping the endpoints.
std::vector<double> clip_breakpoints(std::vector<double> candidates, double lo, double hi);

}  // namespace csnet
