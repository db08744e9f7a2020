#pragma once

#include "cucgarch/garch.hpp"
#include "cucgarch/types.hpp"
#include "cucgarch/whiten.hpp"

#include <string>
#include <vector>

namespace cucgarch {

struct FitMeta {
    int n = 0;
    int nu = 0;
    int k0 = 0;
    double psi_value = 0.0;
};

/// The persisted artifact of a fit: whitening transform, orthogonal
/// component transform, and one volatility parameter set per component.
struct CucModel {
    WhitenTransform whiten;
    Matrix A_hat;                          // d x d orthogonal
    std::vector<ExtGarchParams> components;
    std::string estimator = "qmle";        // "qmle" | "lade"
    FitMeta meta;

    int dim() const { return static_cast<int>(A_hat.rows()); }

    /// W = P Lambda^{1/2} A_hat; maps component variances back to the
    /// conditional covariance of the raw series.
    Matrix loading() const;

    void validate() const;
};

/// JSON persistence, schema_version 1, lossless for finite doubles.
void save_model(const CucModel& model, const std::string& path);
CucModel load_model(const std::string& path);

}  // namespace cucgarch
