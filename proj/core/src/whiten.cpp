#include "cucgarch/whiten.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>

namespace cucgarch {

Matrix WhitenTransform::loading() const {
    return eigvecs * eigvals.array().sqrt().matrix().asDiagonal();
}

Matrix WhitenTransform::apply(const Matrix& raw) const {
    Matrix centered = raw.rowwise() - mean.transpose();
    // x_t = Lambda^{-1/2} P^T (y_t - mean), rows are observations
    return centered * eigvecs * eigvals.array().rsqrt().matrix().asDiagonal();
}

Matrix WhitenTransform::unapply(const Matrix& whitened) const {
    Matrix raw = whitened * loading().transpose();
    return raw.rowwise() + mean.transpose();
}

void WhitenTransform::validate() const {
    const auto d = eigvecs.rows();
    if (eigvecs.cols() != d || mean.size() != d || eigvals.size() != d)
        throw DimensionError("inconsistent whitening transform dimensions");
    if ((eigvals.array() <= 0.0).any())
        throw DataError("whitening transform has a non-positive eigenvalue");
    const double err = (eigvecs.transpose() * eigvecs - Matrix::Identity(d, d))
                           .cwiseAbs()
                           .maxCoeff();
    if (err > 1e-10) throw DataError("whitening eigenvector matrix is not orthogonal");
}

ReturnPanel mean_delete(const ReturnPanel& panel) {
    panel.validate();
    ReturnPanel out = panel;
    out.values.rowwise() -= panel.values.colwise().mean();
    return out;
}

std::pair<ReturnPanel, WhitenTransform> whiten(const ReturnPanel& panel) {
    panel.validate();
    const auto T = panel.values.rows();
    const auto d = panel.values.cols();

    WhitenTransform tf;
    tf.mean = panel.values.colwise().mean().transpose();
    Matrix centered = panel.values.rowwise() - tf.mean.transpose();
    Matrix cov = centered.transpose() * centered / static_cast<double>(T - 1);

    Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
    if (eig.info() != Eigen::Success) throw DataError("eigendecomposition failed");

    // Descending eigenvalues, deterministic eigenvector signs.
    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return eig.eigenvalues()(a) > eig.eigenvalues()(b);
    });

    tf.eigvecs.resize(d, d);
    tf.eigvals.resize(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        Vector v = eig.eigenvectors().col(order[static_cast<std::size_t>(k)]);
        Eigen::Index imax;
        v.cwiseAbs().maxCoeff(&imax);
        if (v(imax) < 0) v = -v;
        tf.eigvecs.col(k) = v;
        tf.eigvals(k) = eig.eigenvalues()(order[static_cast<std::size_t>(k)]);
    }

    if (tf.eigvals(d - 1) <= 1e-12 * tf.eigvals(0))
        throw DataError("sample covariance is rank deficient; cannot whiten");

    ReturnPanel out = panel;
    out.values = tf.apply(panel.values);
    return {std::move(out), std::move(tf)};
}

}  // namespace cucgarch
