#include "cucgarch/cuc_estimation.hpp"

#include "cucgarch/givens.hpp"
#include "cucgarch/nelder_mead.hpp"
#include "cucgarch/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace cucgarch {

namespace {

struct RestartOutcome {
    Vector phi;
    double value = std::numeric_limits<double>::infinity();
    bool converged = false;
    std::vector<IterationRecord> trace;
};

RestartOutcome run_restart(const PsiEvaluator& objective, const Vector& start,
                           int restart_index, const CucOptConfig& cfg, int d) {
    RestartOutcome out;
    int eval_count = 0;
    double running_best = std::numeric_limits<double>::infinity();

    auto f = [&](const Vector& phi) {
        const double v = objective(givens_compose(phi, d));
        ++eval_count;
        if (v < running_best) {
            running_best = v;
            out.trace.push_back({restart_index, eval_count, v});
        }
        return v;
    };

    NelderMeadOptions opts;
    opts.max_evals = cfg.max_evals_per_angle * angle_count(d);
    opts.initial_step = 0.25;
    opts.f_tol = 1e-14;
    opts.project = [](const Vector& phi) { return wrap_angles(phi); };
    opts.stop_on_move = [&](const Vector& prev, const Vector& next) {
        return d_distance(givens_compose(prev, d), givens_compose(next, d)) < cfg.tol_D;
    };

    auto res = nelder_mead(f, start, opts);
    out.phi = wrap_angles(res.x);
    out.value = res.fmin;
    out.converged = res.converged;
    return out;
}

}  // namespace

CucEstimate estimate_cuc(const Matrix& X, const BallFamily& balls, const CucOptConfig& cfg) {
    const int d = static_cast<int>(X.cols());
    CucEstimate est;
    if (d == 1) {
        est.A_hat = Matrix::Identity(1, 1);
        est.phi = Vector(0);
        est.value = 0.0;
        est.converged = true;
        return est;
    }

    BallFamily family = balls;
    family.k0 = cfg.k0;
    if (cfg.weighted && cfg.epsilon0 >= 0.0) family.epsilon0 = cfg.epsilon0;
    const PsiEvaluator objective(X, family, cfg.weighted, cfg.lag_agg);

    const int p = angle_count(d);
    constexpr double pi = std::numbers::pi;

    std::vector<RestartOutcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(cfg.restarts) + 1);

    // Zero-angle start (A = I) plus independent random restarts.
    outcomes.push_back(run_restart(objective, Vector::Zero(p), 0, cfg, d));
    for (int r = 1; r <= cfg.restarts; ++r) {
        Rng rng(derive_seed(cfg.seed, 0xC0C5ULL, static_cast<std::uint64_t>(r)));
        std::uniform_real_distribution<double> unif(-pi, pi);
        Vector start(p);
        for (int k = 0; k < p; ++k) start(k) = unif(rng);
        outcomes.push_back(run_restart(objective, start, r, cfg, d));
    }

    // Winner by value; ties within 1e-12 go to the candidate nearest I.
    int winner = 0;
    double best_value = outcomes[0].value;
    double best_dist = d_distance(givens_compose(outcomes[0].phi, d), Matrix::Identity(d, d));
    for (std::size_t r = 1; r < outcomes.size(); ++r) {
        const double v = outcomes[r].value;
        const double dist =
            d_distance(givens_compose(outcomes[r].phi, d), Matrix::Identity(d, d));
        if (v < best_value - 1e-12 ||
            (std::abs(v - best_value) <= 1e-12 && dist < best_dist)) {
            winner = static_cast<int>(r);
            best_value = std::min(v, best_value);
            best_dist = dist;
        }
    }

    est.phi = outcomes[static_cast<std::size_t>(winner)].phi;
    est.A_hat = givens_compose(est.phi, d);
    est.value = outcomes[static_cast<std::size_t>(winner)].value;
    est.converged = outcomes[static_cast<std::size_t>(winner)].converged;
    for (const auto& o : outcomes)
        est.trace.insert(est.trace.end(), o.trace.begin(), o.trace.end());
    return est;
}

}  // namespace cucgarch
