#pragma once

#include "cucgarch/types.hpp"

#include <functional>
#include <vector>

namespace cucgarch {

struct NelderMeadOptions {
    int max_evals = 2000;
    double f_tol = 1e-10;       // stop when the simplex value spread collapses
    double initial_step = 0.25; // per-coordinate offset for the start simplex
    // Applied to every candidate point before evaluation (e.g. angle wrapping).
    std::function<Vector(const Vector&)> project;
    // Called whenever the incumbent best point changes; returning true stops
    // the search (used for the D-distance stopping rule).
    std::function<bool(const Vector& previous_best, const Vector& best)> stop_on_move;
};

struct NelderMeadResult {
    Vector x;
    double fmin = 0.0;
    int evals = 0;
    bool converged = false;
    std::vector<double> best_trace;  // incumbent value after each improvement
};

/// Derivative-free downhill simplex minimization with standard
/// reflection/expansion/contraction/shrink coefficients (1, 2, 0.5, 0.5).
NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f,
                             const Vector& x0, const NelderMeadOptions& opts = {});

}  // namespace cucgarch
