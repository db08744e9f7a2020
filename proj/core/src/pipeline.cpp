#include "cucgarch/pipeline.hpp"

#include "cucgarch/parallel.hpp"
#include "cucgarch/whiten.hpp"

namespace cucgarch {

CucModel fit_cuc_model(const ReturnPanel& panel, const PipelineConfig& cfg) {
    if (cfg.estimator != "qmle" && cfg.estimator != "lade")
        throw DataError("unknown estimator '" + cfg.estimator + "'");

    auto [white, transform] = whiten(panel);
    const Matrix& X = white.values;
    const int d = static_cast<int>(X.cols());

    const BallFamily balls = build_ball_family(X, cfg.opt.k0, cfg.balls);
    const CucEstimate est = estimate_cuc(X, balls, cfg.opt);

    CucModel model;
    model.whiten = transform;
    model.A_hat = est.A_hat;
    model.estimator = cfg.estimator;
    model.meta.n = static_cast<int>(X.rows());
    model.meta.nu = cfg.garch.nu;
    model.meta.k0 = cfg.opt.k0;
    model.meta.psi_value = est.value;

    const Matrix Z = X * est.A_hat;
    model.components.resize(static_cast<std::size_t>(d));
    parallel_for(d, cfg.threads, [&](int j) {
        if (cfg.select_bic) {
            const CausalSelection sel = select_causal_components(Z, j, cfg.garch, cfg.max_add);
            model.components[static_cast<std::size_t>(j)] = sel.fit.params;
        } else if (cfg.estimator == "lade") {
            model.components[static_cast<std::size_t>(j)] = lade_fit(Z, j, {j}, cfg.garch).params;
        } else {
            model.components[static_cast<std::size_t>(j)] = qmle_fit(Z, j, {j}, cfg.garch).params;
        }
    });
    model.validate();
    return model;
}

Matrix whitened_data(const CucModel& model, const ReturnPanel& panel) {
    if (panel.values.cols() != model.dim())
        throw DimensionError("panel dimension does not match model");
    return model.whiten.apply(panel.values);
}

VolatilityPaths model_paths(const CucModel& model, const ReturnPanel& panel) {
    const Matrix Z = whitened_data(model, panel) * model.A_hat;
    const int d = model.dim();
    Matrix cuc_var(Z.rows(), d);
    for (int j = 0; j < d; ++j)
        cuc_var.col(j) = sigma_path(Z, j, model.components[static_cast<std::size_t>(j)],
                                    model.meta.nu);
    return reconstruct_H(model, cuc_var);
}

}  // namespace cucgarch
