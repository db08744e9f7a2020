#include "cucgarch/reconstruction.hpp"

#include <algorithm>
#include <cmath>

namespace cucgarch {

VolatilityPaths reconstruct_H(const Matrix& W, const Matrix& cuc_var) {
    if (W.cols() != cuc_var.cols())
        throw DimensionError("loading and variance path dimensions differ");
    if ((cuc_var.array() <= 0.0).any())
        throw DataError("component variances must be positive");
    VolatilityPaths paths;
    paths.cuc_var = cuc_var;
    const Eigen::Index T = cuc_var.rows();
    paths.H.reserve(static_cast<std::size_t>(T));
    for (Eigen::Index t = 0; t < T; ++t) {
        Matrix H = W * cuc_var.row(t).asDiagonal() * W.transpose();
        paths.H.push_back((H + H.transpose()) / 2.0);  // kill rounding asymmetry
    }
    return paths;
}

VolatilityPaths reconstruct_H(const CucModel& model, const Matrix& cuc_var) {
    return reconstruct_H(model.loading(), cuc_var);
}

Matrix conditional_correlations(const VolatilityPaths& paths) {
    const Eigen::Index T = paths.cuc_var.rows();
    if (paths.H.size() != static_cast<std::size_t>(T))
        throw DimensionError("H path length does not match variance path");
    const int d = static_cast<int>(paths.H.front().rows());
    Matrix rho(T, d * (d - 1) / 2);
    for (Eigen::Index t = 0; t < T; ++t) {
        const Matrix& H = paths.H[static_cast<std::size_t>(t)];
        int p = 0;
        for (int i = 0; i < d - 1; ++i) {
            for (int j = i + 1; j < d; ++j, ++p) {
                const double denom = H(i, i) * H(j, j);
                if (denom <= 0.0) throw DataError("zero conditional variance on the diagonal");
                rho(t, p) = std::clamp(H(i, j) / std::sqrt(denom), -1.0, 1.0);
            }
        }
    }
    return rho;
}

Vector portfolio_vol(const CucModel& model, const Matrix& cuc_var,
                     const Vector& b1, const Vector* b2) {
    const int d = model.dim();
    if (b1.size() != d || (b2 && b2->size() != d))
        throw DimensionError("portfolio weight length does not match dimension");
    if (!b1.allFinite() || (b2 && !b2->allFinite()))
        throw DataError("portfolio weights must be finite");
    const Matrix W = model.loading();
    const Vector c1 = W.transpose() * b1;
    const Vector c2 = b2 ? Vector(W.transpose() * *b2) : c1;
    const Eigen::Index T = cuc_var.rows();
    Vector out(T);
    for (Eigen::Index t = 0; t < T; ++t)
        out(t) = (c1.array() * c2.array() * cuc_var.row(t).transpose().array()).sum();
    return out;
}

}  // namespace cucgarch
