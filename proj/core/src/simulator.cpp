#include "cucgarch/simulator.hpp"

#include "cucgarch/givens.hpp"
#include "cucgarch/parallel.hpp"
#include "cucgarch/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cucgarch {

void SimConfig::validate() const {
    const int d = static_cast<int>(A.rows());
    if (A.cols() != d || d < 1) throw DimensionError("mixing matrix must be square");
    if (orthogonality_error(A) > 1e-8) throw DataError("mixing matrix is not orthogonal");
    if (static_cast<int>(params.size()) != d)
        throw DimensionError("one parameter set per component required");
    for (int j = 0; j < d; ++j) params[static_cast<std::size_t>(j)].validate(d, j);
    if (!check_stationarity(params).ok)
        throw DataError("non-stationary simulation configuration");
    if (n < 1 || burn_in < 0) throw DataError("invalid sample or burn-in length");
    if (law == InnovationLaw::StudentT && t_df <= 2.0)
        throw DataError("Student-t innovations need t_df > 2");
}

SimConfig default_sim_config(int n, std::uint64_t seed) {
    SimConfig cfg;
    cfg.A.resize(3, 3);
    cfg.A << 0.0, 0.5, std::sqrt(3.0) / 2.0,
             0.0, std::sqrt(3.0) / 2.0, -0.5,
            -1.0, 0.0, 0.0;
    cfg.params = {make_targeted(3, 0, 0.08, 0.90),
                  make_targeted(3, 1, 0.10, 0.80),
                  make_targeted(3, 2, 0.12, 0.60)};
    cfg.n = n;
    cfg.seed = seed;
    return cfg;
}

Matrix simulate_cuc_garch(const SimConfig& cfg) {
    cfg.validate();
    const int d = static_cast<int>(cfg.A.rows());
    const int total = cfg.burn_in + cfg.n;

    Rng rng(derive_seed(cfg.seed, 0x51E0ULL));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::student_t_distribution<double> student(cfg.t_df);
    const double t_scale = cfg.law == InnovationLaw::StudentT
                               ? std::sqrt((cfg.t_df - 2.0) / cfg.t_df)
                               : 1.0;
    auto draw = [&] {
        return cfg.law == InnovationLaw::Normal ? gauss(rng) : student(rng) * t_scale;
    };

    Vector sigma2 = Vector::Ones(d);
    Vector z_prev = Vector::Zero(d);
    Matrix Z(cfg.n, d);
    for (int t = 0; t < total; ++t) {
        Vector z(d);
        for (int j = 0; j < d; ++j) {
            const auto& p = cfg.params[static_cast<std::size_t>(j)];
            double arch = 0.0;
            for (int i : p.active) arch += p.alpha(i) * z_prev(i) * z_prev(i);
            sigma2(j) = p.gamma + arch + p.beta * sigma2(j);
            z(j) = std::sqrt(sigma2(j)) * draw();
        }
        z_prev = z;
        if (t >= cfg.burn_in) Z.row(t - cfg.burn_in) = z.transpose();
    }
    return Z * cfg.A.transpose();  // rows x_t = A z_t
}

McSummary monte_carlo_study(const McConfig& cfg) {
    cfg.sim.validate();
    if (cfg.replications < 2) throw DataError("need at least 2 replications");
    const int d = static_cast<int>(cfg.sim.A.rows());
    const int ncols = 1 + 2 * d;

    McSummary summary;
    summary.columns.push_back("D");
    for (int j = 0; j < d; ++j) {
        summary.columns.push_back("alpha_" + std::to_string(j + 1));
        summary.columns.push_back("beta_" + std::to_string(j + 1));
    }
    summary.replications = cfg.replications;
    summary.draws = Matrix::Constant(cfg.replications, ncols,
                                     std::numeric_limits<double>::quiet_NaN());

    std::vector<char> failed(static_cast<std::size_t>(cfg.replications), 0);
    parallel_for(cfg.replications, cfg.threads, [&](int rep) {
        try {
            SimConfig sim = cfg.sim;
            sim.seed = derive_seed(cfg.sim.seed, 0x4D43ULL, static_cast<std::uint64_t>(rep));
            const Matrix X = simulate_cuc_garch(sim);

            const BallFamily balls = build_ball_family(X, cfg.opt.k0, cfg.balls);
            CucOptConfig opt = cfg.opt;
            opt.seed = derive_seed(sim.seed, 0x0E57ULL);
            const CucEstimate est = estimate_cuc(X, balls, opt);

            summary.draws(rep, 0) = d_distance(est.A_hat, cfg.sim.A);

            // Attribute fitted coefficients to true components.
            const auto [perm, sign] = match_components(cfg.sim.A, est.A_hat);
            Matrix Z = X * est.A_hat;
            for (int j = 0; j < d; ++j) {
                const int col = perm[static_cast<std::size_t>(j)];
                Matrix Zfit(Z.rows(), 1);
                Zfit.col(0) = Z.col(col) * static_cast<double>(sign[static_cast<std::size_t>(j)]);
                const GarchFit fit = qmle_fit(Zfit, 0, {0}, cfg.garch);
                summary.draws(rep, 1 + 2 * j) = fit.params.alpha(0);
                summary.draws(rep, 2 + 2 * j) = fit.params.beta;
            }
        } catch (const std::exception&) {
            failed[static_cast<std::size_t>(rep)] = 1;
        }
    });

    std::vector<int> kept;
    for (int r = 0; r < cfg.replications; ++r)
        if (!failed[static_cast<std::size_t>(r)]) kept.push_back(r);
    summary.failures = cfg.replications - static_cast<int>(kept.size());
    if (kept.size() < 2) throw ConvergenceError("too many failed replications");

    const int m = static_cast<int>(kept.size());
    summary.mean.resize(ncols);
    summary.median.resize(ncols);
    summary.stdev.resize(ncols);
    summary.bias.resize(ncols);
    summary.rmse.resize(ncols);

    Vector truth(ncols);
    truth(0) = std::numeric_limits<double>::quiet_NaN();
    for (int j = 0; j < d; ++j) {
        const auto& p = cfg.sim.params[static_cast<std::size_t>(j)];
        truth(1 + 2 * j) = p.alpha(j);
        truth(2 + 2 * j) = p.beta;
    }

    std::vector<double> column(static_cast<std::size_t>(m));
    for (int c = 0; c < ncols; ++c) {
        double sum = 0.0;
        for (int k = 0; k < m; ++k) {
            column[static_cast<std::size_t>(k)] = summary.draws(kept[static_cast<std::size_t>(k)], c);
            sum += column[static_cast<std::size_t>(k)];
        }
        const double mean = sum / m;
        double ss = 0.0, se = 0.0;
        for (double v : column) {
            ss += (v - mean) * (v - mean);
            if (c > 0) se += (v - truth(c)) * (v - truth(c));
        }
        std::sort(column.begin(), column.end());
        summary.mean(c) = mean;
        summary.median(c) = m % 2 ? column[static_cast<std::size_t>(m / 2)]
                                  : 0.5 * (column[static_cast<std::size_t>(m / 2 - 1)] +
                                           column[static_cast<std::size_t>(m / 2)]);
        summary.stdev(c) = std::sqrt(ss / (m - 1));
        summary.bias(c) = c > 0 ? mean - truth(c) : std::numeric_limits<double>::quiet_NaN();
        summary.rmse(c) = c > 0 ? std::sqrt(se / m) : std::numeric_limits<double>::quiet_NaN();
    }
    return summary;
}

}  // namespace cucgarch
