#include "cucgarch/diagnostics.hpp"

#include "cucgarch/garch.hpp"
#include "cucgarch/rng.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

namespace cucgarch {

Vector sample_acf(const Vector& x, int max_lag) {
    const int n = static_cast<int>(x.size());
    if (max_lag < 1 || max_lag >= n) throw DataError("invalid autocorrelation lag");
    const double mean = x.mean();
    const double c0 = (x.array() - mean).square().sum() / n;
    if (c0 <= 0.0) throw DataError("constant series has no autocorrelation");
    Vector r(max_lag);
    for (int k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (int t = k; t < n; ++t) ck += (x(t) - mean) * (x(t - k) - mean);
        r(k - 1) = ck / n / c0;
    }
    return r;
}

double ljung_box(const Vector& y, int K) {
    const int n = static_cast<int>(y.size());
    if (K < 1 || K >= n) throw DataError("invalid Ljung-Box lag");
    const Vector r = sample_acf(y, K);
    double q = 0.0;
    for (int k = 1; k <= K; ++k) q += r(k - 1) * r(k - 1) / (n - k);
    return n * (n + 2.0) * q;
}

double chi2_pvalue(double q, int dof) {
    if (dof < 1) throw DataError("degrees of freedom must be positive");
    if (q <= 0.0) return 1.0;
    return boost::math::gamma_q(0.5 * dof, 0.5 * q);
}

double q_pvalue_bootstrap(const Vector& y, int K, int B, std::uint64_t seed) {
    if (B < 19) throw DataError("bootstrap p-value needs B >= 19");
    const int n = static_cast<int>(y.size());
    const double q_obs = ljung_box(y, K);

    const Garch11 fit = fit_garch11(y);
    const Vector sigma2 = garch11_sigma2(y, fit);
    Vector eps(n);
    for (int t = 0; t < n; ++t) eps(t) = y(t) / std::sqrt(sigma2(t));
    // standardize the pool
    const double mean = eps.mean();
    const double sd = std::sqrt((eps.array() - mean).square().sum() / (n - 1));
    eps = (eps.array() - mean) / sd;

    const double uncond = fit.omega / std::max(1.0 - fit.alpha - fit.beta, 1e-6);
    constexpr int kBurnIn = 100;
    int exceed = 0;
    for (int b = 0; b < B; ++b) {
        Rng rng(derive_seed(seed, 0x1B07ULL, static_cast<std::uint64_t>(b)));
        std::uniform_int_distribution<int> pick(0, n - 1);
        double s2 = uncond;
        double y_prev = 0.0;
        Vector ystar(n);
        for (int t = -kBurnIn; t < n; ++t) {
            s2 = fit.omega + fit.alpha * y_prev * y_prev + fit.beta * s2;
            y_prev = std::sqrt(s2) * eps(pick(rng));
            if (t >= 0) ystar(t) = y_prev;
        }
        if (ljung_box(ystar, K) > q_obs) ++exceed;
    }
    return static_cast<double>(exceed) / B;
}

double cross_product_Q(const Matrix& Y, const VolatilityPaths& paths, int i, int j, int M) {
    const int n = static_cast<int>(Y.rows());
    const int d = static_cast<int>(Y.cols());
    if (i < 0 || i >= d || j < 0 || j >= d) throw DimensionError("pair index out of range");
    if (M < 1) throw DataError("M must be >= 1");
    if (paths.H.size() != static_cast<std::size_t>(n))
        throw DimensionError("H path length does not match the panel");

    Vector c(n);
    for (int t = 0; t < n; ++t) {
        const Matrix& H = paths.H[static_cast<std::size_t>(t)];
        const double sii = H(i, i), sjj = H(j, j);
        if (sii <= 0.0 || sjj <= 0.0) throw DataError("non-positive conditional variance");
        const double ui = Y(t, i) / std::sqrt(sii);
        if (i == j) {
            c(t) = ui * ui - 1.0;
        } else {
            const double uj = Y(t, j) / std::sqrt(sjj);
            const double rho = H(i, j) / std::sqrt(sii * sjj);
            c(t) = ui * uj - rho;
        }
    }
    const Vector r = sample_acf(c, M);
    return n * r.squaredNorm();
}

int QDiagnostics::stars(int i, int j) const {
    const double p = p_values.at({i, j});
    if (p < 0.01) return 3;
    if (p < 0.05) return 2;
    if (p < 0.10) return 1;
    return 0;
}

QDiagnostics q_diagnostics(const Matrix& Y, const VolatilityPaths& paths, int M) {
    QDiagnostics out;
    out.M = M;
    const int d = static_cast<int>(Y.cols());
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            const double q = cross_product_Q(Y, paths, i, j, M);
            out.Q[{i, j}] = q;
            out.p_values[{i, j}] = chi2_pvalue(q, M);
        }
    }
    return out;
}

}  // namespace cucgarch
