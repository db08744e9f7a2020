#include "cucgarch/balls.hpp"
#include "cucgarch/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

using namespace cucgarch;

namespace {

Matrix random_sample(int n, int d, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> gauss;
    Matrix X(n, d);
    for (int t = 0; t < n; ++t)
        for (int j = 0; j < d; ++j) X(t, j) = gauss(rng);
    return X;
}

int members_within(const Matrix& X, const Vector& center, double radius) {
    int count = 0;
    for (Eigen::Index t = 0; t < X.rows(); ++t)
        if ((X.row(t).transpose() - center).norm() <= radius) ++count;
    return count;
}

}  // namespace

TEST_CASE("balls: every ball holds at least min_count points") {
    const Matrix X = random_sample(200, 3, 404);
    const BallFamily fam = build_ball_family(X, 1);
    CHECK(fam.min_count == 30);  // max(30, ceil(0.1 * 200)) = 30
    for (Eigen::Index b = 0; b < fam.centers.rows(); ++b)
        CHECK(members_within(X, fam.centers.row(b).transpose(), fam.radius) >= fam.min_count);
}

TEST_CASE("balls: the radius is minimal for the coverage rule") {
    const Matrix X = random_sample(150, 2, 8);
    BallConfig cfg;
    cfg.min_count = 25;
    const BallFamily fam = build_ball_family(X, 2, cfg);
    // Brute-force oracle: max over centers of the 25th nearest-neighbor distance.
    double oracle = 0.0;
    for (Eigen::Index b = 0; b < fam.centers.rows(); ++b) {
        std::vector<double> dist;
        for (Eigen::Index t = 0; t < X.rows(); ++t)
            dist.push_back((X.row(t) - fam.centers.row(b)).norm());
        std::sort(dist.begin(), dist.end());
        oracle = std::max(oracle, dist[24]);
    }
    CHECK(fam.radius == oracle);
    CHECK(fam.k0 == 2);
}

TEST_CASE("balls: centers are sample points anchored at coordinate deciles") {
    const Matrix X = random_sample(120, 2, 77);
    const BallFamily fam = build_ball_family(X, 1);
    // At most 9 anchors per coordinate, and every center is an observation.
    CHECK(fam.centers.rows() <= 9 * X.cols());
    CHECK(fam.centers.rows() >= 9);  // continuous data: at least one coordinate's worth
    for (Eigen::Index b = 0; b < fam.centers.rows(); ++b) {
        bool found = false;
        for (Eigen::Index t = 0; t < X.rows() && !found; ++t)
            found = (X.row(t) - fam.centers.row(b)).cwiseAbs().maxCoeff() == 0.0;
        CHECK(found);
    }
}

TEST_CASE("balls: defaults and validation") {
    const Matrix X = random_sample(50, 2, 3);
    const BallFamily fam = build_ball_family(X, 1);
    CHECK(fam.epsilon0 == 1.0 / 50);
    CHECK(fam.min_count == 30);

    BallConfig bad;
    bad.min_count = 51;
    CHECK_THROWS_AS(build_ball_family(X, 1, bad), DataError);
    CHECK_THROWS_AS(build_ball_family(X, 0), DataError);

    BallFamily broken = fam;
    broken.radius = 0.0;
    CHECK_THROWS_AS(broken.validate(), DataError);
}

TEST_CASE("balls: deterministic across repeated builds") {
    const Matrix X = random_sample(180, 3, 55);
    const BallFamily a = build_ball_family(X, 1);
    const BallFamily b = build_ball_family(X, 1);
    CHECK(a.radius == b.radius);
    CHECK((a.centers - b.centers).cwiseAbs().maxCoeff() == 0.0);
}
