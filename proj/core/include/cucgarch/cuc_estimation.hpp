#pragma once

#include "cucgarch/balls.hpp"
#include "cucgarch/psi.hpp"
#include "cucgarch/types.hpp"

#include <cstdint>
#include <vector>

namespace cucgarch {

struct CucOptConfig {
    int k0 = 1;
    double epsilon0 = -1.0;          // < 0: 1/n (weighted variant only)
    bool weighted = false;
    LagAggregate lag_agg = LagAggregate::Sup;
    int restarts = 10;               // random restarts besides the zero-angle start
    double tol_D = 1e-4;             // stop when successive incumbents are this close
    int max_evals_per_angle = 500;   // evaluation budget = 500 * d(d-1)/2 per restart
    std::uint64_t seed = 0;
};

struct IterationRecord {
    int restart;
    int evals;     // cumulative evaluations within the restart
    double value;  // incumbent objective value (non-increasing per restart)
};

struct CucEstimate {
    Matrix A_hat;
    Vector phi;        // angles of the winning restart, wrapped into (-pi, pi]
    double value = 0;  // objective at A_hat
    bool converged = false;
    std::vector<IterationRecord> trace;
};

/// Estimates the orthogonal transform by minimizing the ball-indexed
/// objective over the rotation-angle chart, with multi-start simplex search.
/// Restarts are independent; ties within 1e-12 of the best value go to the
/// candidate closest to the identity. Deterministic given (X, balls, config).
CucEstimate estimate_cuc(const Matrix& X, const BallFamily& balls,
                         const CucOptConfig& cfg = {});

}  // namespace cucgarch
