#pragma once

#include "cucgarch/cuc_estimation.hpp"
#include "cucgarch/garch.hpp"
#include "cucgarch/model.hpp"
#include "cucgarch/types.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace cucgarch {

/// Rank of "the [B*alpha]-th largest" order statistic: floor(B*alpha), at least 1.
int bracket_rank(int B, double alpha);

/// The k-th largest value (k is 1-based).
double kth_largest(std::vector<double> values, int k);

/// Component series and residual pool of a fitted model on whitened data X:
/// z = X * A_hat, eps_tj = z_tj / sigma_tj, standardized to mean 0, sd 1
/// over t = nu+1..n. Returns (Z, residuals), residuals (n - nu) x d.
std::pair<Matrix, Matrix> model_residuals(const CucModel& model, const Matrix& X);

/// One bootstrap panel X* of n rows: component-wise i.i.d. resampling from
/// the residual pools, the fitted variance recursion run through burn_in
/// pre-sample steps (sigma2 = 1, z = 0 start), then x*_t = A_hat z*_t.
Matrix draw_bootstrap_sample(const CucModel& model, const Matrix& residuals,
                             int n, int burn_in, std::uint64_t seed);

struct BootstrapConfig {
    int B = 199;
    int burn_in = 500;
    std::uint64_t seed = 0;
    CucOptConfig opt;
    GarchFitConfig garch;
    BallConfig balls;
    bool refit_garch = false;  // re-estimate component GARCH per replicate
    int threads = 0;
};

/// One replicate's statistics.
struct BootstrapRun {
    double psi_star = 0.0;  // objective of the re-estimated transform on X*
    double d_star = 0.0;    // D(A_hat, A*)
    // Matched to the original component order; empty unless refit_garch.
    std::vector<ExtGarchParams> params_star;
};

/// Replicate loop shared by the existence test, the confidence set and the
/// parameter intervals. Each replicate rebuilds the ball family on its own
/// panel; a failed replicate is retried once with a fresh seed, and more
/// than 5% failures abort. Results are independent of scheduling.
std::vector<BootstrapRun> run_bootstrap(const Matrix& X, const CucModel& model,
                                        const Matrix& residuals,
                                        const BootstrapConfig& cfg);

struct BootstrapResult {
    std::vector<double> statistics;
    double observed = 0.0;
    double p_value = 0.0;
    std::map<double, double> c_alpha;  // alpha -> critical value
    int B = 0;
    std::uint64_t seed = 0;
};

/// Existence test: p-value is the exceedance frequency of the observed
/// objective value among the replicate values. Requires B >= 19.
BootstrapResult existence_test(const Matrix& X, const CucModel& model,
                               const Matrix& residuals, const BootstrapConfig& cfg);

/// Critical value of the transform confidence set from D(A_hat, A*) draws:
/// the [B*alpha]-th largest. Requires B >= ceil(1/alpha).
double confidence_set_A(const std::vector<double>& d_draws, double alpha);

/// Membership predicate of the confidence set.
bool in_confidence_set(const Matrix& A_hat, const Matrix& A, double c_alpha);

/// Equal-tailed percentile interval from B draws of one parameter, using
/// order statistics [B*alpha/2] and [B*(1-alpha/2)]. Requires B >= ceil(2/alpha).
std::pair<double, double> percentile_interval(std::vector<double> draws, double alpha);

}  // namespace cucgarch
