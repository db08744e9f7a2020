#include "cucgarch/garch.hpp"

#include "cucgarch/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cucgarch {

namespace {

constexpr double kMarginCap = 1e-4;  // enforced slack in sum(alpha) + beta < 1

double softplus(double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); }
double softplus_inv(double y) { return y > 30.0 ? y : std::log(std::expm1(y)); }
double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

/// Negative log quasi-density of a unit-variance innovation.
double neg_log_density(double x, const GarchFitConfig& cfg) {
    switch (cfg.density) {
        case QuasiDensity::Normal:
            return 0.5 * std::log(2.0 * std::numbers::pi) + 0.5 * x * x;
        case QuasiDensity::StudentT: {
            const double nu = cfg.t_df;
            return -std::lgamma(0.5 * (nu + 1.0)) + std::lgamma(0.5 * nu) +
                   0.5 * std::log(std::numbers::pi * (nu - 2.0)) +
                   0.5 * (nu + 1.0) * std::log1p(x * x / (nu - 2.0));
        }
        case QuasiDensity::Ged: {
            const double k = cfg.ged_shape;
            const double lambda =
                std::sqrt(std::exp(std::lgamma(1.0 / k) - std::lgamma(3.0 / k)));
            return -std::log(k) + std::log(2.0) + std::log(lambda) +
                   std::lgamma(1.0 / k) + std::pow(std::abs(x) / lambda, k);
        }
    }
    return 0.0;
}

/// Maps the unconstrained optimizer vector u (one slot per active alpha plus
/// beta) to a valid targeted parameter set, rescaling into the constraint
/// set when needed.
ExtGarchParams from_unconstrained(const Vector& u, int d,
                                  const std::vector<int>& active) {
    ExtGarchParams p;
    p.active = active;
    p.alpha = Vector::Zero(d);
    const int m = static_cast<int>(active.size());
    for (int i = 0; i < m; ++i) p.alpha(active[static_cast<std::size_t>(i)]) = softplus(u(i));
    p.beta = sigmoid(u(m));
    const double total = p.alpha.sum() + p.beta;
    const double cap = 1.0 - kMarginCap;
    if (total > cap) {
        const double scale = cap / total;
        p.alpha *= scale;
        p.beta *= scale;
    }
    p.gamma = 1.0 - p.beta - p.alpha.sum();
    return p;
}

Vector to_unconstrained(const ExtGarchParams& p) {
    const int m = static_cast<int>(p.active.size());
    Vector u(m + 1);
    for (int i = 0; i < m; ++i)
        u(i) = softplus_inv(std::max(p.alpha(p.active[static_cast<std::size_t>(i)]), 1e-8));
    u(m) = logit(std::min(std::max(p.beta, 1e-6), 1.0 - 1e-6));
    return u;
}

std::vector<int> normalized_active(int d, int j, std::vector<int> active) {
    if (std::find(active.begin(), active.end(), j) == active.end()) active.push_back(j);
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());
    for (int i : active)
        if (i < 0 || i >= d) throw DimensionError("active index out of range");
    return active;
}

void check_fit_preconditions(const Matrix& Z, int j, const std::vector<int>& active,
                             int nu) {
    const int n = static_cast<int>(Z.rows());
    if (j < 0 || j >= Z.cols()) throw DimensionError("component index out of range");
    const int k = static_cast<int>(active.size());
    if (n - nu < 10 * (k + 1))
        throw DataError("too few observations for " + std::to_string(k) +
                        " active components: need n - nu >= " + std::to_string(10 * (k + 1)));
    if (Z.col(j).cwiseAbs().maxCoeff() == 0.0)
        throw DataError("component " + std::to_string(j + 1) + " is identically zero");
}

ExtGarchParams heuristic_start(int d, int j, const std::vector<int>& active) {
    ExtGarchParams p;
    p.active = active;
    p.alpha = Vector::Zero(d);
    for (int i : active) p.alpha(i) = i == j ? 0.05 : 0.01;
    p.beta = 0.90;
    p.gamma = 1.0 - p.beta - p.alpha.sum();
    return p;
}

}  // namespace

void ExtGarchParams::validate(int d, int own_index) const {
    if (alpha.size() != d) throw DimensionError("alpha has the wrong length");
    if (active.empty()) throw DataError("active set is empty");
    if (std::find(active.begin(), active.end(), own_index) == active.end())
        throw DataError("active set must contain the component's own index");
    if ((alpha.array() < 0.0).any()) throw DataError("negative alpha coefficient");
    if (beta < 0.0 || beta >= 1.0) throw DataError("beta must lie in [0, 1)");
    for (int i = 0; i < d; ++i) {
        const bool is_active = std::find(active.begin(), active.end(), i) != active.end();
        if (!is_active && alpha(i) != 0.0)
            throw DataError("nonzero alpha outside the active set");
    }
    if (alpha.sum() + beta >= 1.0)
        throw DataError("stationarity violation: sum(alpha) + beta >= 1");
    if (std::abs(gamma - (1.0 - beta - alpha.sum())) > 1e-10)
        throw DataError("variance-targeting identity violated");
}

ExtGarchParams make_targeted(int d, int own_index, double alpha_own, double beta) {
    ExtGarchParams p;
    p.alpha = Vector::Zero(d);
    p.alpha(own_index) = alpha_own;
    p.beta = beta;
    p.active = {own_index};
    p.gamma = 1.0 - beta - alpha_own;
    p.validate(d, own_index);
    return p;
}

StationarityReport check_stationarity(const std::vector<ExtGarchParams>& params) {
    StationarityReport report;
    int r = 0;
    for (const auto& p : params) {
        int nonzero = 0;
        for (Eigen::Index i = 0; i < p.alpha.size(); ++i)
            if (p.alpha(i) != 0.0) ++nonzero;
        r = std::max(r, nonzero);
    }
    report.r = std::max(r, 1);
    for (const auto& p : params) {
        const double amax = p.alpha.size() > 0 ? p.alpha.maxCoeff() : 0.0;
        const double margin = 1.0 - (report.r * amax + p.beta);
        report.margin.push_back(margin);
        report.component_ok.push_back(margin > 0.0);
        if (margin <= 0.0) report.ok = false;
    }
    return report;
}

Vector sigma_path(const Matrix& Z, int j, const ExtGarchParams& params, int nu) {
    const int T = static_cast<int>(Z.rows());
    const int d = static_cast<int>(Z.cols());
    params.validate(d, j);
    if (T < nu + 1) throw DataError("series shorter than nu + 1");

    const double alpha_sum = params.alpha.sum();
    const double zero_history = 1.0 - alpha_sum / (1.0 - params.beta);
    const double gamma = params.gamma;

    Vector sigma2(T);
    double prev = zero_history;  // value implied by z_{t<=0} = 0
    sigma2(0) = prev;
    for (int t = 1; t < T; ++t) {
        double arch = 0.0;
        for (int i : params.active) arch += params.alpha(i) * Z(t - 1, i) * Z(t - 1, i);
        prev = gamma + arch + params.beta * prev;
        sigma2(t) = prev;
    }
    return sigma2;
}

double garch_nll(const Matrix& Z, int j, const ExtGarchParams& params,
                 const GarchFitConfig& cfg) {
    const Vector sigma2 = sigma_path(Z, j, params, cfg.nu);
    const int T = static_cast<int>(Z.rows());
    double nll = 0.0;
    for (int t = cfg.nu; t < T; ++t) {
        const double s = std::sqrt(sigma2(t));
        nll += std::log(s) + neg_log_density(Z(t, j) / s, cfg);
    }
    return nll;
}

GarchFit qmle_fit(const Matrix& Z, int j, const std::vector<int>& active_in,
                  const GarchFitConfig& cfg) {
    const int d = static_cast<int>(Z.cols());
    const auto active = normalized_active(d, j, active_in);
    check_fit_preconditions(Z, j, active, cfg.nu);

    auto objective = [&](const Vector& u) {
        return garch_nll(Z, j, from_unconstrained(u, d, active), cfg);
    };

    NelderMeadOptions opts;
    opts.max_evals = cfg.max_evals;
    opts.f_tol = 1e-10;
    opts.initial_step = 0.5;
    auto res = nelder_mead(objective, to_unconstrained(heuristic_start(d, j, active)), opts);

    GarchFit fit;
    fit.params = from_unconstrained(res.x, d, active);
    fit.nll = res.fmin;
    fit.converged = res.converged;
    fit.params.validate(d, j);
    return fit;
}

LadeFit lade_fit(const Matrix& Z, int j, const std::vector<int>& active_in,
                 const GarchFitConfig& cfg) {
    const int d = static_cast<int>(Z.cols());
    const int T = static_cast<int>(Z.rows());
    const auto active = normalized_active(d, j, active_in);
    check_fit_preconditions(Z, j, active, cfg.nu);

    // log z^2 floored to keep zero returns finite
    const double floor = 1e-12 * Z.col(j).array().square().mean();
    Vector log_z2(T);
    for (int t = 0; t < T; ++t)
        log_z2(t) = std::log(std::max(Z(t, j) * Z(t, j), floor));

    auto residual_scale = [&](const ExtGarchParams& p) {
        const Vector sigma2 = sigma_path(Z, j, p, cfg.nu);
        double sum = 0.0, sumsq = 0.0;
        const int m = T - cfg.nu;
        for (int t = cfg.nu; t < T; ++t) {
            const double e = Z(t, j) / std::sqrt(sigma2(t));
            sum += e;
            sumsq += e * e;
        }
        const double var = (sumsq - sum * sum / m) / (m - 1);
        return 1.0 / std::sqrt(var);
    };

    auto l1_objective = [&](const ExtGarchParams& p, double log_v02) {
        const Vector sigma2 = sigma_path(Z, j, p, cfg.nu);
        double total = 0.0;
        for (int t = cfg.nu; t < T; ++t)
            total += std::abs(log_z2(t) - std::log(sigma2(t)) - log_v02);
        return total;
    };

    NelderMeadOptions opts;
    opts.max_evals = cfg.max_evals;
    opts.f_tol = 1e-12;
    opts.initial_step = 0.5;

    // Initial fit: L1 criterion with the scale profiled out of the residuals.
    auto initial_objective = [&](const Vector& u) {
        const auto p = from_unconstrained(u, d, active);
        const double v0 = residual_scale(p);
        return l1_objective(p, 2.0 * std::log(v0));
    };
    auto init = nelder_mead(initial_objective,
                            to_unconstrained(heuristic_start(d, j, active)), opts);

    ExtGarchParams params = from_unconstrained(init.x, d, active);
    double v0 = residual_scale(params);
    bool converged = false;

    NelderMeadOptions inner_opts = opts;
    inner_opts.max_evals = std::max(200, cfg.max_evals / 4);

    for (int outer = 0; outer < 50; ++outer) {
        // Weights from the previous absolute residuals of the log regression.
        const Vector sigma2 = sigma_path(Z, j, params, cfg.nu);
        const double log_v02 = 2.0 * std::log(v0);
        Vector w(T);
        for (int t = cfg.nu; t < T; ++t) {
            const double r = std::abs(log_z2(t) - std::log(sigma2(t)) - log_v02);
            w(t) = 1.0 / std::max(r, 1e-6);
        }

        auto weighted_objective = [&](const Vector& u) {
            const auto p = from_unconstrained(u, d, active);
            const Vector s2 = sigma_path(Z, j, p, cfg.nu);
            double total = 0.0;
            for (int t = cfg.nu; t < T; ++t) {
                const double r = log_z2(t) - std::log(s2(t)) - log_v02;
                total += w(t) * r * r;
            }
            return total;
        };

        auto step = nelder_mead(weighted_objective, to_unconstrained(params), inner_opts);
        const ExtGarchParams updated = from_unconstrained(step.x, d, active);

        double delta = std::abs(updated.beta - params.beta);
        delta = std::max(delta, (updated.alpha - params.alpha).cwiseAbs().maxCoeff());
        params = updated;
        v0 = residual_scale(params);
        if (delta < 1e-6) {
            converged = true;
            break;
        }
    }

    LadeFit fit;
    fit.params = params;
    fit.v0 = v0;
    fit.objective = l1_objective(params, 2.0 * std::log(v0));
    fit.converged = converged;
    fit.params.validate(d, j);
    return fit;
}

CausalSelection select_causal_components(const Matrix& Z, int j,
                                         const GarchFitConfig& cfg, int max_add) {
    const int d = static_cast<int>(Z.cols());
    const int n = static_cast<int>(Z.rows());
    const double penalty_base = std::log(static_cast<double>(n - cfg.nu));
    if (max_add < 0) max_add = d - 1;

    CausalSelection sel;
    std::vector<int> active = {j};
    GarchFit current = qmle_fit(Z, j, active, cfg);
    sel.nll.push_back(current.nll);
    sel.bic.push_back(current.nll + 2.0 * penalty_base);
    sel.added.push_back(j);

    std::vector<int> best_active = active;
    double best_bic = sel.bic.back();
    GarchFit best_fit = current;

    for (int k = 1; k <= max_add; ++k) {
        int best_candidate = -1;
        GarchFit best_step;
        best_step.nll = std::numeric_limits<double>::infinity();
        for (int l = 0; l < d; ++l) {
            if (std::find(active.begin(), active.end(), l) != active.end()) continue;
            std::vector<int> trial = active;
            trial.push_back(l);
            GarchFit fit;
            try {
                fit = qmle_fit(Z, j, trial, cfg);
            } catch (const DataError&) {
                continue;  // too few observations for a larger set
            }
            if (fit.nll < best_step.nll) {
                best_step = fit;
                best_candidate = l;
            }
        }
        if (best_candidate < 0) break;
        active.push_back(best_candidate);
        std::sort(active.begin(), active.end());
        sel.nll.push_back(best_step.nll);
        sel.bic.push_back(best_step.nll + (k + 2) * penalty_base);
        sel.added.push_back(best_candidate);
        if (sel.bic.back() < best_bic) {
            best_bic = sel.bic.back();
            best_active = active;
            best_fit = best_step;
        }
    }

    sel.active = best_active;
    sel.fit = best_fit;
    return sel;
}

Garch11 fit_garch11(const Vector& y, int max_evals) {
    const int n = static_cast<int>(y.size());
    if (n < 30) throw DataError("series too short for a GARCH(1,1) fit");
    const double var = (y.array() - y.mean()).square().sum() / (n - 1);
    if (var <= 0.0) throw DataError("constant series");

    auto from_u = [&](const Vector& u) {
        Garch11 p;
        p.omega = std::exp(u(0));
        p.alpha = softplus(u(1));
        p.beta = sigmoid(u(2));
        const double total = p.alpha + p.beta;
        const double cap = 1.0 - kMarginCap;
        if (total > cap) {
            p.alpha *= cap / total;
            p.beta *= cap / total;
        }
        return p;
    };

    auto objective = [&](const Vector& u) {
        const Garch11 p = from_u(u);
        double nll = 0.0;
        double s2 = var;
        for (int t = 0; t < n; ++t) {
            if (t > 0) s2 = p.omega + p.alpha * y(t - 1) * y(t - 1) + p.beta * s2;
            nll += 0.5 * std::log(s2) + 0.5 * y(t) * y(t) / s2;
        }
        return nll;
    };

    Vector u0(3);
    u0(0) = std::log(0.05 * var);
    u0(1) = softplus_inv(0.05);
    u0(2) = logit(0.90);

    NelderMeadOptions opts;
    opts.max_evals = max_evals;
    opts.f_tol = 1e-10;
    opts.initial_step = 0.5;
    auto res = nelder_mead(objective, u0, opts);

    Garch11 p = from_u(res.x);
    p.converged = res.converged;
    return p;
}

Vector garch11_sigma2(const Vector& y, const Garch11& p) {
    const int n = static_cast<int>(y.size());
    const double var = (y.array() - y.mean()).square().sum() / std::max(n - 1, 1);
    Vector s2(n);
    s2(0) = var;
    for (int t = 1; t < n; ++t)
        s2(t) = p.omega + p.alpha * y(t - 1) * y(t - 1) + p.beta * s2(t - 1);
    return s2;
}

}  // namespace cucgarch
