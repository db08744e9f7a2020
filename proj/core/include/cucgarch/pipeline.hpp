#pragma once

#include "cucgarch/bootstrap.hpp"
#include "cucgarch/cuc_estimation.hpp"
#include "cucgarch/garch.hpp"
#include "cucgarch/model.hpp"
#include "cucgarch/reconstruction.hpp"
#include "cucgarch/types.hpp"

#include <string>

namespace cucgarch {

struct PipelineConfig {
    CucOptConfig opt;
    GarchFitConfig garch;
    BallConfig balls;
    std::string estimator = "qmle";  // "qmle" | "lade"
    bool select_bic = false;
    int max_add = -1;
    int threads = 0;
};

/// End-to-end fit: mean-delete, whiten, estimate the component transform,
/// fit per-component volatility dynamics (optionally with stepwise causal
/// selection). Per-component fits run in parallel.
CucModel fit_cuc_model(const ReturnPanel& panel, const PipelineConfig& cfg = {});

/// Recomputes the fitted variance paths and H_t sequence of a model on its
/// (raw) input panel.
VolatilityPaths model_paths(const CucModel& model, const ReturnPanel& panel);

/// Whitened working data of a panel under the model's stored transform.
Matrix whitened_data(const CucModel& model, const ReturnPanel& panel);

}  // namespace cucgarch
