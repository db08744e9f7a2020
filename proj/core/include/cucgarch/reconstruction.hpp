#pragma once

#include "cucgarch/model.hpp"
#include "cucgarch/types.hpp"

#include <vector>

namespace cucgarch {

/// Per-time component variances plus the reconstructed conditional covariance
/// sequence H_t = W diag(sigma2_t) W^T of the raw series.
struct VolatilityPaths {
    Matrix cuc_var;          // T x d, all entries > 0
    std::vector<Matrix> H;   // T matrices, d x d, PSD by construction
};

VolatilityPaths reconstruct_H(const CucModel& model, const Matrix& cuc_var);

/// As above but with an explicit loading W (baselines reuse this).
VolatilityPaths reconstruct_H(const Matrix& W, const Matrix& cuc_var);

/// T x d(d-1)/2 matrix of conditional correlations rho_{t,ij}, pair order
/// (1,2),(1,3),...,(d-1,d), clipped into [-1, 1].
Matrix conditional_correlations(const VolatilityPaths& paths);

/// Conditional variance of the portfolio b1^T y_t per t, or the conditional
/// covariance with b2^T y_t when b2 is given, via the component-sum formula
/// with coefficients mapped through W.
Vector portfolio_vol(const CucModel& model, const Matrix& cuc_var,
                     const Vector& b1, const Vector* b2 = nullptr);

}  // namespace cucgarch
