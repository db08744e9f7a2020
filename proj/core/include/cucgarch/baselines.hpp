#pragma once

#include "cucgarch/garch.hpp"
#include "cucgarch/model.hpp"
#include "cucgarch/reconstruction.hpp"
#include "cucgarch/types.hpp"

#include <utility>
#include <vector>

namespace cucgarch {

/// Principal-component baseline: univariate GARCH(1,1) per standardized PC,
/// identity component transform. Shares the reconstruction path with the
/// main model (it is a CucModel with A_hat = I).
std::pair<CucModel, VolatilityPaths> fit_ogarch(const ReturnPanel& panel,
                                                const GarchFitConfig& cfg = {});

struct DccParams {
    double theta1 = 0.0;
    double theta2 = 0.0;
    Matrix S;                        // correlation target, unit diagonal
    std::vector<Garch11> marginals;  // per raw component
    bool boundary = false;           // theta search ended on the constraint edge
};

struct DccConfig {
    GarchFitConfig garch;
    bool residual_corr = true;  // S from standardized residuals (false: raw data)
    int max_evals = 400;
};

/// Two-step scalar-DCC baseline: univariate GARCH(1,1) marginals, then the
/// correlation recursion Q_t = S(1-t1-t2) + t1 e_{t-1} e_{t-1}' + t2 Q_{t-1}
/// with (t1, t2) maximizing the Gaussian correlation likelihood. R_t is the
/// quasi-correlation normalization of Q_t; H_t = D_t R_t D_t.
std::pair<DccParams, VolatilityPaths> fit_dcc(const ReturnPanel& panel,
                                              const DccConfig& cfg = {});

}  // namespace cucgarch
