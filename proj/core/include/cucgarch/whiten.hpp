#pragma once

#include "cucgarch/types.hpp"

#include <utility>

namespace cucgarch {

/// Eigendecomposition-based whitening transform: x = Lambda^{-1/2} P^T (y - mean).
/// Eigenvalues are sorted descending and each eigenvector's largest-magnitude
/// entry is made positive, so the transform is deterministic across runs.
struct WhitenTransform {
    Vector mean;      // d
    Matrix eigvecs;   // d x d, columns are eigenvectors of the sample covariance
    Vector eigvals;   // d, all positive

    /// W_base = P Lambda^{1/2}; maps whitened rows back to centered raw rows.
    Matrix loading() const;

    /// Applies the transform to a T x d block of raw rows.
    Matrix apply(const Matrix& raw) const;

    /// Inverse of apply (adds the mean back).
    Matrix unapply(const Matrix& whitened) const;

    void validate() const;
};

/// Subtracts the sample mean from every column.
ReturnPanel mean_delete(const ReturnPanel& panel);

/// Whitens a panel to unit sample covariance (1/(T-1) divisor). Throws
/// DataError when the sample covariance is rank deficient
/// (lambda_min <= 1e-12 * lambda_max).
std::pair<ReturnPanel, WhitenTransform> whiten(const ReturnPanel& panel);

}  // namespace cucgarch
