#include "cucgarch/baselines.hpp"

#include "cucgarch/nelder_mead.hpp"
#include "cucgarch/whiten.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>

namespace cucgarch {

std::pair<CucModel, VolatilityPaths> fit_ogarch(const ReturnPanel& panel,
                                                const GarchFitConfig& cfg) {
    auto [white, transform] = whiten(panel);
    const int d = static_cast<int>(white.values.cols());

    CucModel model;
    model.whiten = transform;
    model.A_hat = Matrix::Identity(d, d);
    model.estimator = "qmle";
    model.meta.n = static_cast<int>(white.values.rows());
    model.meta.nu = cfg.nu;
    model.meta.k0 = 0;
    model.meta.psi_value = 0.0;

    Matrix cuc_var(white.values.rows(), d);
    for (int j = 0; j < d; ++j) {
        const GarchFit fit = qmle_fit(white.values, j, {j}, cfg);
        model.components.push_back(fit.params);
        cuc_var.col(j) = sigma_path(white.values, j, fit.params, cfg.nu);
    }
    return {model, reconstruct_H(model, cuc_var)};
}

namespace {

Matrix to_correlation(const Matrix& Q) {
    const int d = static_cast<int>(Q.rows());
    Vector scale(d);
    for (int i = 0; i < d; ++i) scale(i) = 1.0 / std::sqrt(Q(i, i));
    Matrix R = scale.asDiagonal() * Q * scale.asDiagonal();
    for (int i = 0; i < d; ++i) R(i, i) = 1.0;
    return R;
}

/// Gaussian correlation-part negative log-likelihood of the scalar recursion.
double dcc_nll(double theta1, double theta2, const Matrix& eps, const Matrix& S) {
    const int n = static_cast<int>(eps.rows());
    const int d = static_cast<int>(eps.cols());
    Matrix Q = S;
    double nll = 0.0;
    for (int t = 0; t < n; ++t) {
        if (t > 0) {
            const Vector e = eps.row(t - 1).transpose();
            Q = S * (1.0 - theta1 - theta2) + theta1 * (e * e.transpose()) + theta2 * Q;
        }
        const Matrix R = to_correlation(Q);
        Eigen::LLT<Matrix> llt(R);
        if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
        double logdet = 0.0;
        for (int i = 0; i < d; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
        const Vector e = eps.row(t).transpose();
        nll += 0.5 * (logdet + e.dot(llt.solve(e)));
    }
    return nll;
}

}  // namespace

std::pair<DccParams, VolatilityPaths> fit_dcc(const ReturnPanel& panel,
                                              const DccConfig& cfg) {
    panel.validate();
    const int d = static_cast<int>(panel.values.cols());
    if (d < 2) throw DataError("the correlation baseline needs d >= 2");
    const ReturnPanel centered = mean_delete(panel);
    const int n = static_cast<int>(centered.values.rows());

    DccParams params;
    Matrix sigma2(n, d);
    Matrix eps(n, d);
    for (int j = 0; j < d; ++j) {
        const Garch11 fit = fit_garch11(centered.values.col(j), cfg.garch.max_evals);
        params.marginals.push_back(fit);
        sigma2.col(j) = garch11_sigma2(centered.values.col(j), fit);
        eps.col(j) = centered.values.col(j).array() / sigma2.col(j).array().sqrt();
    }

    const Matrix& base = cfg.residual_corr ? eps : centered.values;
    Matrix centered_base = base.rowwise() - base.colwise().mean();
    Matrix cov = centered_base.transpose() * centered_base / static_cast<double>(n - 1);
    params.S = to_correlation(cov);

    constexpr double kCap = 1.0 - 1e-4;
    auto clamp_theta = [&](double t1, double t2) {
        t1 = std::max(t1, 0.0);
        t2 = std::max(t2, 0.0);
        const double total = t1 + t2;
        if (total > kCap) {
            t1 *= kCap / total;
            t2 *= kCap / total;
        }
        return std::pair<double, double>{t1, t2};
    };

    // Coarse grid, then a local simplex refinement from the best cell.
    double best1 = 0.0, best2 = 0.0;
    double best_nll = dcc_nll(0.0, 0.0, eps, params.S);
    for (double t1 = 0.0; t1 <= 0.20001; t1 += 0.04) {
        for (double t2 = 0.0; t2 < 1.0 - t1; t2 += 0.15) {
            const double v = dcc_nll(t1, t2, eps, params.S);
            if (v < best_nll) {
                best_nll = v;
                best1 = t1;
                best2 = t2;
            }
        }
    }

    NelderMeadOptions opts;
    opts.max_evals = cfg.max_evals;
    opts.f_tol = 1e-8;
    opts.initial_step = 0.05;
    opts.project = [&](const Vector& x) {
        auto [t1, t2] = clamp_theta(x(0), x(1));
        Vector p(2);
        p << t1, t2;
        return p;
    };
    Vector x0(2);
    x0 << best1, best2;
    auto res = nelder_mead([&](const Vector& x) { return dcc_nll(x(0), x(1), eps, params.S); },
                           x0, opts);
    std::tie(params.theta1, params.theta2) = clamp_theta(res.x(0), res.x(1));
    params.boundary = params.theta1 + params.theta2 >= kCap - 1e-8;

    // Final pass: store the fitted paths.
    VolatilityPaths paths;
    paths.cuc_var = sigma2;  // marginal variances for this baseline
    paths.H.reserve(static_cast<std::size_t>(n));
    Matrix Q = params.S;
    for (int t = 0; t < n; ++t) {
        if (t > 0) {
            const Vector e = eps.row(t - 1).transpose();
            Q = params.S * (1.0 - params.theta1 - params.theta2) +
                params.theta1 * (e * e.transpose()) + params.theta2 * Q;
        }
        const Matrix R = to_correlation(Q);
        Vector dvec = sigma2.row(t).transpose().array().sqrt();
        paths.H.push_back(dvec.asDiagonal() * R * dvec.asDiagonal());
    }
    return {params, paths};
}

}  // namespace cucgarch
