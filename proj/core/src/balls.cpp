#include "cucgarch/balls.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

namespace cucgarch {

void BallFamily::validate() const {
    if (centers.rows() < 1) throw DataError("ball family needs at least one ball");
    if (!(radius > 0.0)) throw DataError("ball radius must be positive");
    if (k0 < 1) throw DataError("k0 must be >= 1");
    if (epsilon0 < 0.0) throw DataError("epsilon0 must be non-negative");
}

BallFamily build_ball_family(const Matrix& X, int k0, const BallConfig& cfg) {
    const int n = static_cast<int>(X.rows());
    const int d = static_cast<int>(X.cols());
    if (n < 2) throw DataError("too few observations to build a ball family");
    if (k0 < 1) throw DataError("k0 must be >= 1");

    const int min_count =
        cfg.min_count >= 0 ? cfg.min_count
                           : std::max(30, static_cast<int>(std::ceil(0.1 * n)));
    if (min_count > n)
        throw DataError("radius rule unsatisfiable: min_count " + std::to_string(min_count) +
                        " exceeds sample size " + std::to_string(n));

    // Decile anchors per coordinate (nearest rank on the sorted sample), then
    // every observation hitting an anchor in some coordinate becomes a center.
    std::set<int> center_rows;
    std::vector<double> column(static_cast<std::size_t>(n));
    for (int c = 0; c < d; ++c) {
        for (int t = 0; t < n; ++t) column[static_cast<std::size_t>(t)] = X(t, c);
        std::vector<double> sorted = column;
        std::sort(sorted.begin(), sorted.end());
        for (int p = 1; p <= 9; ++p) {
            const int rank = std::max(1, static_cast<int>(std::ceil(0.1 * p * n)));
            const double anchor = sorted[static_cast<std::size_t>(rank - 1)];
            for (int t = 0; t < n; ++t) {
                if (X(t, c) == anchor) {
                    center_rows.insert(t);
                    break;  // one representative per (coordinate, decile)
                }
            }
        }
    }

    BallFamily family;
    family.k0 = k0;
    family.min_count = min_count;
    family.epsilon0 = cfg.epsilon0 >= 0.0 ? cfg.epsilon0 : 1.0 / n;
    family.centers.resize(static_cast<Eigen::Index>(center_rows.size()), d);
    Eigen::Index row = 0;
    for (int t : center_rows) family.centers.row(row++) = X.row(t);

    // Smallest common radius covering min_count points around every center:
    // max over centers of the min_count-th nearest-neighbor distance.
    double radius = 0.0;
    std::vector<double> dist(static_cast<std::size_t>(n));
    for (Eigen::Index b = 0; b < family.centers.rows(); ++b) {
        for (int t = 0; t < n; ++t)
            dist[static_cast<std::size_t>(t)] = (X.row(t) - family.centers.row(b)).norm();
        std::nth_element(dist.begin(), dist.begin() + (min_count - 1), dist.end());
        radius = std::max(radius, dist[static_cast<std::size_t>(min_count - 1)]);
    }
    family.radius = radius;
    family.validate();
    return family;
}

}  // namespace cucgarch
