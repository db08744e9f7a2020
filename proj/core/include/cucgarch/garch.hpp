#pragma once

#include "cucgarch/types.hpp"

#include <vector>

namespace cucgarch {

/// Per-component coefficients of the extended GARCH(1,1) recursion
///   sigma2_tj = gamma + sum_i alpha_i z2_{t-1,i} + beta sigma2_{t-1,j}
/// under variance targeting gamma = 1 - beta - sum(alpha), so each component
/// has unit unconditional variance. alpha_i may be nonzero only on the
/// active index set, which always contains the component's own index.
struct ExtGarchParams {
    double gamma = 1.0;
    Vector alpha;             // size d, zero off the active set
    double beta = 0.0;
    std::vector<int> active;  // 0-based, sorted, contains the own index

    double alpha_sum() const { return alpha.sum(); }

    /// Throws DataError on any invariant violation (targeting identity,
    /// nonnegativity, sum(alpha) + beta < 1, active-set consistency).
    void validate(int d, int own_index) const;
};

/// Variance-targeted parameter set with the given own-index loading.
ExtGarchParams make_targeted(int d, int own_index, double alpha_own, double beta);

struct StationarityReport {
    bool ok = true;
    int r = 0;                         // max count of nonzero alphas across components
    std::vector<double> margin;        // 1 - (r * max_i alpha_ji + beta_j) per j
    std::vector<bool> component_ok;
};

/// Checks the strict-stationarity sufficient condition
/// r * max_i alpha_ji + beta_j < 1 for every component.
StationarityReport check_stationarity(const std::vector<ExtGarchParams>& params);

/// Conditional variance path of component j given the full component panel Z
/// (T x d), with the convention z_{t,i} = 0 for t <= 0. Equivalent to the
/// truncated infinite-order representation; the zero-history value is
/// 1 - sum(alpha)/(1 - beta). nu only gates the minimal length T >= nu + 1.
Vector sigma_path(const Matrix& Z, int j, const ExtGarchParams& params, int nu);

enum class QuasiDensity { Normal, Ged, StudentT };

struct GarchFitConfig {
    int nu = 10;                     // likelihood sums over t = nu+1..n
    QuasiDensity density = QuasiDensity::Normal;
    double t_df = 8.0;               // StudentT quasi-density dof (> 2)
    double ged_shape = 1.5;          // Ged quasi-density shape
    int max_evals = 2000;
};

struct GarchFit {
    ExtGarchParams params;
    double nll = 0.0;   // achieved negative quasi-log-likelihood
    bool converged = false;
};

/// Negative quasi-log-likelihood sum_{t>nu} { log sigma_t - log f(z_t/sigma_t) }
/// at the given parameters; the oracle used by the fitters.
double garch_nll(const Matrix& Z, int j, const ExtGarchParams& params,
                 const GarchFitConfig& cfg);

/// Quasi-MLE over the constraint set (alpha >= 0 on the active set,
/// sum(alpha) + beta < 1), via simplex search on softplus/logistic-transformed
/// parameters. Deterministic.
GarchFit qmle_fit(const Matrix& Z, int j, const std::vector<int>& active,
                  const GarchFitConfig& cfg = {});

struct LadeFit {
    ExtGarchParams params;
    double v0 = 1.0;         // innovation scale, 1/STD of standardized residuals
    double objective = 0.0;  // final L1 value of the log-squared regression
    bool converged = false;
};

/// Least-absolute-deviation estimator on log z^2, solved by an initial
/// profile fit followed by iteratively reweighted least squares with
/// alternating scale updates.
LadeFit lade_fit(const Matrix& Z, int j, const std::vector<int>& active,
                 const GarchFitConfig& cfg = {});

struct CausalSelection {
    std::vector<int> active;     // selected index set (0-based)
    std::vector<double> bic;     // BIC(k) for k = 0..steps
    std::vector<double> nll;     // l_j(k)
    std::vector<int> added;      // index added at each step (added[0] unused own)
    GarchFit fit;                // refit at the selected set
};

/// Stepwise addition of cross terms scored by BIC(k) = l_j(k) + (k+2) log(n-nu).
/// max_add < 0 allows up to d-1 additions.
CausalSelection select_causal_components(const Matrix& Z, int j,
                                         const GarchFitConfig& cfg = {},
                                         int max_add = -1);

/// Standard univariate GARCH(1,1) with a free intercept,
/// y_t = sigma_t e_t, sigma2_t = omega + alpha y2_{t-1} + beta sigma2_{t-1};
/// used by the diagnostics bootstrap and the baseline models.
struct Garch11 {
    double omega = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    bool converged = false;
};

Garch11 fit_garch11(const Vector& y, int max_evals = 2000);

/// Variance path of the univariate model, initialized at the sample variance.
Vector garch11_sigma2(const Vector& y, const Garch11& p);

}  // namespace cucgarch
