#pragma once

#include "cucgarch/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace cucgarch {

/// Number of free rotation angles for dimension d: d(d-1)/2.
inline int angle_count(int d) { return d * (d - 1) / 2; }

/// Composes the orthogonal matrix A = prod_{i<j} E_ij(phi_ij), where
/// E_ij(phi) is the identity with entries (i,i) = (j,j) = cos phi,
/// (i,j) = sin phi and (j,i) = -sin phi. The angle order is fixed
/// lexicographically: (1,2),(1,3),...,(1,d),(2,3),...,(d-1,d), and the
/// factors multiply left to right in that order.
Matrix givens_compose(const Vector& phi, int d);

/// Wraps each angle into (-pi, pi].
Vector wrap_angles(Vector phi);

/// Identification-class distance between two orthogonal matrices:
/// D(A, B) = 1 - (1/d) sum_i max_j |a_i^T b_j| over columns a_i, b_j.
/// Zero exactly when the columns of B are a signed permutation of those of A.
double d_distance(const Matrix& A, const Matrix& B);

/// Max-abs deviation of A^T A from the identity.
double orthogonality_error(const Matrix& A);

/// Greedy assignment matching columns of A to columns of A_ref by maximal
/// |a_ref_i^T a_j|. Returns, for each reference column i, the matched column
/// index perm[i] of A and the sign making the inner product positive.
std::pair<std::vector<int>, std::vector<int>> match_components(const Matrix& A_ref,
                                                               const Matrix& A);

/// Random orthogonal matrix drawn by composing uniform angles in (-pi, pi].
Matrix random_orthogonal(int d, std::uint64_t seed);

}  // namespace cucgarch
