#pragma once

#include "cucgarch/balls.hpp"
#include "cucgarch/types.hpp"

#include <vector>

namespace cucgarch {

/// How lags 1..k0 enter the objective: worst case over lags (the displayed
/// form) or the sum over lags of the per-lag worst case over balls.
enum class LagAggregate { Sup, Sum };

/// Precomputed evaluator for the conditional-uncorrelatedness objective.
///
/// For each lag k and ball B the lagged second-moment matrix
///   C_{k,B} = (n-k)^{-1} sum_{t=k+1}^n x_t x_t^T 1{x_{t-k} in B}
/// is computed once; evaluating a candidate A then costs one congruence
/// A^T C A per (k, B). The weighted variant replaces the indicator by
/// 1{.} + epsilon0 and normalizes by its sum instead of (n-k).
class PsiEvaluator {
public:
    PsiEvaluator(const Matrix& X, const BallFamily& balls, bool weighted = false,
                 LagAggregate agg = LagAggregate::Sup);

    /// Objective value sum_{i<j} aggregate_{k,B} |a_i^T C_{k,B} a_j|.
    double operator()(const Matrix& A) const;

    int dim() const { return d_; }

private:
    int d_;
    LagAggregate agg_;
    // moments_[k-1][b], d x d each
    std::vector<std::vector<Matrix>> moments_;
};

/// One-shot evaluation of the objective (builds the evaluator internally).
double psi_n(const Matrix& A, const Matrix& X, const BallFamily& balls,
             LagAggregate agg = LagAggregate::Sup);

/// Weighted variant with per-ball normalization controlled by balls.epsilon0.
double psi_n_weighted(const Matrix& A, const Matrix& X, const BallFamily& balls,
                      LagAggregate agg = LagAggregate::Sup);

}  // namespace cucgarch
