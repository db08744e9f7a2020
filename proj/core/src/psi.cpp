#include "cucgarch/psi.hpp"

#include <cmath>

namespace cucgarch {

PsiEvaluator::PsiEvaluator(const Matrix& X, const BallFamily& balls, bool weighted,
                           LagAggregate agg)
    : d_(static_cast<int>(X.cols())), agg_(agg) {
    balls.validate();
    const int n = static_cast<int>(X.rows());
    const int m = static_cast<int>(balls.centers.rows());
    if (balls.centers.cols() != X.cols())
        throw DimensionError("ball centers and data have different dimensions");
    if (n <= balls.k0 + 1) throw DataError("sample too short for the requested k0");

    const double r2 = balls.radius * balls.radius;
    moments_.resize(static_cast<std::size_t>(balls.k0));
    for (int k = 1; k <= balls.k0; ++k) {
        auto& per_ball = moments_[static_cast<std::size_t>(k - 1)];
        per_ball.assign(static_cast<std::size_t>(m), Matrix::Zero(d_, d_));
        std::vector<double> weight_sum(static_cast<std::size_t>(m), 0.0);
        for (int t = k; t < n; ++t) {  // 0-based: pairs (x_t, lagged x_{t-k})
            const auto x = X.row(t);
            const Matrix outer = x.transpose() * x;
            for (int b = 0; b < m; ++b) {
                const bool inside =
                    (X.row(t - k) - balls.centers.row(b)).squaredNorm() <= r2;
                if (weighted) {
                    const double w = (inside ? 1.0 : 0.0) + balls.epsilon0;
                    if (w > 0.0) {
                        per_ball[static_cast<std::size_t>(b)] += w * outer;
                        weight_sum[static_cast<std::size_t>(b)] += w;
                    }
                } else if (inside) {
                    per_ball[static_cast<std::size_t>(b)] += outer;
                }
            }
        }
        for (int b = 0; b < m; ++b) {
            if (weighted) {
                const double denom = weight_sum[static_cast<std::size_t>(b)];
                if (denom > 0.0) per_ball[static_cast<std::size_t>(b)] /= denom;
            } else {
                per_ball[static_cast<std::size_t>(b)] /= static_cast<double>(n - k);
            }
        }
    }
}

double PsiEvaluator::operator()(const Matrix& A) const {
    if (A.rows() != d_ || A.cols() != d_)
        throw DimensionError("candidate matrix has the wrong dimension");
    const int pairs = d_ * (d_ - 1) / 2;
    if (pairs == 0) return 0.0;

    std::vector<double> acc(static_cast<std::size_t>(pairs), 0.0);
    std::vector<double> lag_sup(static_cast<std::size_t>(pairs));
    for (const auto& per_ball : moments_) {
        std::fill(lag_sup.begin(), lag_sup.end(), 0.0);
        for (const auto& C : per_ball) {
            const Matrix G = A.transpose() * C * A;
            int p = 0;
            for (int i = 0; i < d_ - 1; ++i)
                for (int j = i + 1; j < d_; ++j, ++p) {
                    const double v = std::abs(G(i, j));
                    auto& s = lag_sup[static_cast<std::size_t>(p)];
                    if (v > s) s = v;
                }
        }
        for (int p = 0; p < pairs; ++p) {
            auto& a = acc[static_cast<std::size_t>(p)];
            const double s = lag_sup[static_cast<std::size_t>(p)];
            if (agg_ == LagAggregate::Sup) {
                if (s > a) a = s;
            } else {
                a += s;
            }
        }
    }
    double total = 0.0;
    for (double a : acc) total += a;
    return total;
}

double psi_n(const Matrix& A, const Matrix& X, const BallFamily& balls, LagAggregate agg) {
    return PsiEvaluator(X, balls, false, agg)(A);
}

double psi_n_weighted(const Matrix& A, const Matrix& X, const BallFamily& balls,
                      LagAggregate agg) {
    return PsiEvaluator(X, balls, true, agg)(A);
}

}  // namespace cucgarch
