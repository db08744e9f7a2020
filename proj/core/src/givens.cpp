#include "cucgarch/givens.hpp"

#include "cucgarch/rng.hpp"

#include <cmath>
#include <numbers>

namespace cucgarch {

Matrix givens_compose(const Vector& phi, int d) {
    if (d < 1) throw DimensionError("dimension must be positive");
    if (phi.size() != angle_count(d))
        throw DimensionError("expected " + std::to_string(angle_count(d)) +
                             " angles, got " + std::to_string(phi.size()));
    Matrix A = Matrix::Identity(d, d);
    int idx = 0;
    for (int i = 0; i < d - 1; ++i) {
        for (int j = i + 1; j < d; ++j, ++idx) {
            const double c = std::cos(phi(idx));
            const double s = std::sin(phi(idx));
            // Right-multiply by E_ij in place: only columns i and j change.
            Vector col_i = A.col(i) * c - A.col(j) * s;
            Vector col_j = A.col(i) * s + A.col(j) * c;
            A.col(i) = col_i;
            A.col(j) = col_j;
        }
    }
    return A;
}

Vector wrap_angles(Vector phi) {
    constexpr double pi = std::numbers::pi;
    for (Eigen::Index k = 0; k < phi.size(); ++k) {
        double a = std::fmod(phi(k), 2.0 * pi);
        if (a <= -pi) a += 2.0 * pi;
        if (a > pi) a -= 2.0 * pi;
        phi(k) = a;
    }
    return phi;
}

double d_distance(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols() || A.rows() != A.cols())
        throw DimensionError("d_distance requires square matrices of equal size");
    const Matrix G = (A.transpose() * B).cwiseAbs();
    return 1.0 - G.rowwise().maxCoeff().mean();
}

double orthogonality_error(const Matrix& A) {
    return (A.transpose() * A - Matrix::Identity(A.cols(), A.cols())).cwiseAbs().maxCoeff();
}

std::pair<std::vector<int>, std::vector<int>> match_components(const Matrix& A_ref,
                                                               const Matrix& A) {
    if (A_ref.rows() != A.rows() || A_ref.cols() != A.cols())
        throw DimensionError("match_components requires equal shapes");
    const int d = static_cast<int>(A.cols());
    Matrix G = A_ref.transpose() * A;  // G(i, j) = a_ref_i . a_j
    std::vector<int> perm(d, -1), sign(d, 1);
    std::vector<bool> used(d, false);
    // Greedy: repeatedly take the globally largest remaining |G(i, j)|.
    for (int step = 0; step < d; ++step) {
        int bi = -1, bj = -1;
        double best = -1.0;
        for (int i = 0; i < d; ++i) {
            if (perm[i] >= 0) continue;
            for (int j = 0; j < d; ++j) {
                if (used[j]) continue;
                if (std::abs(G(i, j)) > best) {
                    best = std::abs(G(i, j));
                    bi = i;
                    bj = j;
                }
            }
        }
        perm[bi] = bj;
        used[bj] = true;
        sign[bi] = G(bi, bj) >= 0 ? 1 : -1;
    }
    return {perm, sign};
}

Matrix random_orthogonal(int d, std::uint64_t seed) {
    Rng rng(seed);
    constexpr double pi = std::numbers::pi;
    std::uniform_real_distribution<double> unif(-pi, pi);
    Vector phi(angle_count(d));
    for (Eigen::Index k = 0; k < phi.size(); ++k) phi(k) = unif(rng);
    return givens_compose(phi, d);
}

}  // namespace cucgarch
