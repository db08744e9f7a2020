#include "cucgarch/bootstrap.hpp"

#include "cucgarch/givens.hpp"
#include "cucgarch/parallel.hpp"
#include "cucgarch/rng.hpp"

#include <algorithm>
#include <cmath>

namespace cucgarch {

int bracket_rank(int B, double alpha) {
    return std::max(1, static_cast<int>(std::floor(B * alpha)));
}

double kth_largest(std::vector<double> values, int k) {
    if (k < 1 || k > static_cast<int>(values.size()))
        throw DataError("order-statistic rank out of range");
    std::nth_element(values.begin(), values.begin() + (k - 1), values.end(),
                     std::greater<double>());
    return values[static_cast<std::size_t>(k - 1)];
}

std::pair<Matrix, Matrix> model_residuals(const CucModel& model, const Matrix& X) {
    model.validate();
    const int d = model.dim();
    if (X.cols() != d) throw DimensionError("data dimension does not match model");
    const int n = static_cast<int>(X.rows());
    const int nu = model.meta.nu;
    if (n <= nu + 1) throw DataError("too few observations for the model's nu");

    Matrix Z = X * model.A_hat;
    Matrix residuals(n - nu, d);
    for (int j = 0; j < d; ++j) {
        const Vector sigma2 = sigma_path(Z, j, model.components[static_cast<std::size_t>(j)], nu);
        for (int t = nu; t < n; ++t)
            residuals(t - nu, j) = Z(t, j) / std::sqrt(sigma2(t));
        // standardize the pool to mean 0, sd 1
        auto col = residuals.col(j);
        const double mean = col.mean();
        const double sd = std::sqrt((col.array() - mean).square().sum() / (col.size() - 1));
        if (sd <= 0.0) throw DataError("degenerate residual pool");
        col = (col.array() - mean) / sd;
    }
    return {std::move(Z), std::move(residuals)};
}

Matrix draw_bootstrap_sample(const CucModel& model, const Matrix& residuals,
                             int n, int burn_in, std::uint64_t seed) {
    const int d = model.dim();
    if (residuals.cols() != d) throw DimensionError("residual pool dimension mismatch");
    if (residuals.rows() < 1) throw DataError("empty residual pool");
    if (burn_in < 0) throw DataError("burn_in must be non-negative");
    if (n < 1) throw DataError("sample length must be positive");

    Rng rng(derive_seed(seed, 0xD7A3ULL));
    std::uniform_int_distribution<int> pick(0, static_cast<int>(residuals.rows()) - 1);

    Vector sigma2 = Vector::Ones(d);
    Vector z_prev = Vector::Zero(d);
    Matrix Z(n, d);
    const int total = burn_in + n;
    for (int t = 0; t < total; ++t) {
        Vector z(d);
        for (int j = 0; j < d; ++j) {
            const auto& p = model.components[static_cast<std::size_t>(j)];
            double arch = 0.0;
            for (int i : p.active) arch += p.alpha(i) * z_prev(i) * z_prev(i);
            sigma2(j) = p.gamma + arch + p.beta * sigma2(j);
            z(j) = std::sqrt(sigma2(j)) * residuals(pick(rng), j);
        }
        z_prev = z;
        if (t >= burn_in) Z.row(t - burn_in) = z.transpose();
    }
    return Z * model.A_hat.transpose();
}

std::vector<BootstrapRun> run_bootstrap(const Matrix& X, const CucModel& model,
                                        const Matrix& residuals,
                                        const BootstrapConfig& cfg) {
    if (cfg.B < 1) throw DataError("B must be positive");
    const int n = static_cast<int>(X.rows());
    const int d = model.dim();

    std::vector<BootstrapRun> runs(static_cast<std::size_t>(cfg.B));
    std::vector<char> failed(static_cast<std::size_t>(cfg.B), 0);

    auto one_replicate = [&](int b, std::uint64_t seed) {
        const Matrix Xstar = draw_bootstrap_sample(model, residuals, n, cfg.burn_in, seed);
        // The statistic is computed exactly as on real data: the ball family
        // is rebuilt on the bootstrap panel.
        const BallFamily balls = build_ball_family(Xstar, cfg.opt.k0, cfg.balls);
        CucOptConfig opt = cfg.opt;
        opt.seed = derive_seed(seed, 0x0E57ULL);
        const CucEstimate est = estimate_cuc(Xstar, balls, opt);

        BootstrapRun run;
        run.psi_star = est.value;
        run.d_star = d_distance(model.A_hat, est.A_hat);

        if (cfg.refit_garch) {
            const auto [perm, sign] = match_components(model.A_hat, est.A_hat);
            (void)sign;  // squares make signs irrelevant for the fit
            const Matrix Zstar = Xstar * est.A_hat;
            run.params_star.resize(static_cast<std::size_t>(d));
            for (int j = 0; j < d; ++j) {
                const auto& orig = model.components[static_cast<std::size_t>(j)];
                std::vector<int> active_star;
                for (int i : orig.active) active_star.push_back(perm[static_cast<std::size_t>(i)]);
                const GarchFit fit =
                    qmle_fit(Zstar, perm[static_cast<std::size_t>(j)], active_star, cfg.garch);
                // map back into the original component labelling
                ExtGarchParams mapped;
                mapped.beta = fit.params.beta;
                mapped.alpha = Vector::Zero(d);
                for (int i = 0; i < d; ++i)
                    mapped.alpha(i) = fit.params.alpha(perm[static_cast<std::size_t>(i)]);
                mapped.active = orig.active;
                mapped.gamma = fit.params.gamma;
                run.params_star[static_cast<std::size_t>(j)] = std::move(mapped);
            }
        }
        runs[static_cast<std::size_t>(b)] = std::move(run);
    };

    parallel_for(cfg.B, cfg.threads, [&](int b) {
        try {
            one_replicate(b, derive_seed(cfg.seed, 0xB007ULL, static_cast<std::uint64_t>(b)));
        } catch (const std::exception&) {
            try {  // one retry with a fresh seed
                one_replicate(b, derive_seed(cfg.seed, 0xB007ULL,
                                             static_cast<std::uint64_t>(b) + 0x10000000ULL));
            } catch (const std::exception&) {
                failed[static_cast<std::size_t>(b)] = 1;
            }
        }
    });

    int failures = 0;
    for (char f : failed) failures += f;
    if (failures * 20 >= cfg.B)
        throw ConvergenceError("bootstrap aborted: " + std::to_string(failures) + " of " +
                               std::to_string(cfg.B) + " replicates failed");
    if (failures > 0) {
        std::vector<BootstrapRun> kept;
        kept.reserve(runs.size());
        for (int b = 0; b < cfg.B; ++b)
            if (!failed[static_cast<std::size_t>(b)]) kept.push_back(std::move(runs[static_cast<std::size_t>(b)]));
        return kept;
    }
    return runs;
}

BootstrapResult existence_test(const Matrix& X, const CucModel& model,
                               const Matrix& residuals, const BootstrapConfig& cfg) {
    if (cfg.B < 19) throw DataError("existence test needs B >= 19");

    BallFamily balls = build_ball_family(X, cfg.opt.k0, cfg.balls);
    if (cfg.opt.weighted && cfg.opt.epsilon0 >= 0.0) balls.epsilon0 = cfg.opt.epsilon0;
    const double psi_obs =
        cfg.opt.weighted ? psi_n_weighted(model.A_hat, X, balls, cfg.opt.lag_agg)
                         : psi_n(model.A_hat, X, balls, cfg.opt.lag_agg);

    BootstrapConfig run_cfg = cfg;
    run_cfg.refit_garch = false;
    const auto runs = run_bootstrap(X, model, residuals, run_cfg);

    BootstrapResult result;
    result.B = static_cast<int>(runs.size());
    result.seed = cfg.seed;
    result.observed = psi_obs;
    int exceed = 0;
    for (const auto& r : runs) {
        result.statistics.push_back(r.psi_star);
        if (r.psi_star >= psi_obs) ++exceed;
    }
    result.p_value = static_cast<double>(exceed) / result.B;
    for (double alpha : {0.01, 0.05, 0.10}) {
        if (result.B * alpha >= 1.0)
            result.c_alpha[alpha] = kth_largest(result.statistics, bracket_rank(result.B, alpha));
    }
    return result;
}

double confidence_set_A(const std::vector<double>& d_draws, double alpha) {
    const int B = static_cast<int>(d_draws.size());
    if (alpha <= 0.0 || alpha >= 1.0) throw DataError("alpha must lie in (0, 1)");
    if (B < static_cast<int>(std::ceil(1.0 / alpha)))
        throw DataError("too few bootstrap draws for alpha = " + std::to_string(alpha));
    return kth_largest(d_draws, bracket_rank(B, alpha));
}

bool in_confidence_set(const Matrix& A_hat, const Matrix& A, double c_alpha) {
    return d_distance(A_hat, A) <= c_alpha;
}

std::pair<double, double> percentile_interval(std::vector<double> draws, double alpha) {
    const int B = static_cast<int>(draws.size());
    if (alpha <= 0.0 || alpha >= 1.0) throw DataError("alpha must lie in (0, 1)");
    if (B < static_cast<int>(std::ceil(2.0 / alpha)))
        throw DataError("too few bootstrap draws for alpha = " + std::to_string(alpha));
    std::sort(draws.begin(), draws.end());
    const int b1 = std::max(1, static_cast<int>(std::floor(B * alpha / 2.0)));
    const int b2 = std::max(1, static_cast<int>(std::floor(B * (1.0 - alpha / 2.0))));
    return {draws[static_cast<std::size_t>(b1 - 1)], draws[static_cast<std::size_t>(b2 - 1)]};
}

}  // namespace cucgarch
