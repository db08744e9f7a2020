#pragma once

#include "cucgarch/reconstruction.hpp"
#include "cucgarch/types.hpp"

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

namespace cucgarch {

/// Sample autocorrelations r_1..r_max_lag with the biased (divide-by-n)
/// covariance normalization. Throws DataError on a constant series.
Vector sample_acf(const Vector& x, int max_lag);

/// Ljung-Box portmanteau statistic n(n+2) sum_{k<=K} r_k^2 / (n-k).
double ljung_box(const Vector& y, int K);

/// Upper-tail chi-squared p-value with dof degrees of freedom.
double chi2_pvalue(double q, int dof);

/// Bootstrap p-value of the Ljung-Box statistic under a fitted univariate
/// GARCH(1,1) null: residuals are resampled, the series regenerated from the
/// fitted recursion, and p is the frequency of Q* > Q over B replicates.
double q_pvalue_bootstrap(const Vector& y, int K, int B, std::uint64_t seed);

/// Portmanteau statistic on cross products of standardized residuals:
/// with u_ti = y_ti / sqrt(H_t(i,i)) and
/// c_t = u_ti^2 - 1 (i == j) or u_ti u_tj - rho_{t,ij} (i != j),
/// Q(ij, M) = n sum_{k<=M} r_k^2 over the autocorrelations of c_t.
/// Referenced against chi2_M.
double cross_product_Q(const Matrix& Y, const VolatilityPaths& paths,
                       int i, int j, int M);

struct QDiagnostics {
    std::map<std::pair<int, int>, double> Q;         // (i, j) -> statistic
    std::map<std::pair<int, int>, double> p_values;  // chi2_M reference
    int M = 10;

    /// Significance star count at levels 0.10 / 0.05 / 0.01.
    int stars(int i, int j) const;
};

/// All per-pair statistics (i <= j) for one fitted covariance path.
QDiagnostics q_diagnostics(const Matrix& Y, const VolatilityPaths& paths, int M = 10);

}  // namespace cucgarch
