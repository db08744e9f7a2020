#include "cucgarch/givens.hpp"
#include "cucgarch/reconstruction.hpp"
#include "cucgarch/rng.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <random>

using namespace cucgarch;

namespace {

CucModel random_model(int d, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> uni(0.5, 3.0);
    CucModel m;
    m.whiten.mean = Vector::Zero(d);
    m.whiten.eigvecs = random_orthogonal(d, seed + 1);
    m.whiten.eigvals.resize(d);
    for (int i = 0; i < d; ++i) m.whiten.eigvals(i) = uni(rng);
    std::sort(m.whiten.eigvals.data(), m.whiten.eigvals.data() + d,
              std::greater<double>());
    m.A_hat = random_orthogonal(d, seed + 2);
    for (int j = 0; j < d; ++j) m.components.push_back(make_targeted(d, j, 0.05, 0.9));
    return m;
}

Matrix random_variances(int T, int d, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> uni(0.2, 4.0);
    Matrix v(T, d);
    for (int t = 0; t < T; ++t)
        for (int j = 0; j < d; ++j) v(t, j) = uni(rng);
    return v;
}

}  // namespace

TEST_CASE("reconstruction: H_t = W diag(sigma2_t) W^T, symmetric and PSD") {
    const CucModel m = random_model(3, 100);
    const Matrix v = random_variances(50, 3, 101);
    const VolatilityPaths paths = reconstruct_H(m, v);
    const Matrix W = m.loading();
    REQUIRE(paths.H.size() == 50);
    for (int t = 0; t < 50; ++t) {
        const Matrix& H = paths.H[static_cast<std::size_t>(t)];
        const Matrix expected = W * v.row(t).asDiagonal() * W.transpose();
        CHECK((H - expected).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((H - H.transpose()).cwiseAbs().maxCoeff() == 0.0);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(H);
        CHECK(eig.eigenvalues().minCoeff() > -1e-10);
    }
}

TEST_CASE("reconstruction: rejects non-positive variances and shape mismatch") {
    const CucModel m = random_model(2, 7);
    Matrix v = random_variances(10, 2, 8);
    v(3, 1) = 0.0;
    CHECK_THROWS_AS(reconstruct_H(m, v), DataError);
    CHECK_THROWS_AS(reconstruct_H(m, random_variances(10, 3, 9)), DimensionError);
}

TEST_CASE("reconstruction: conditional correlations are valid and ordered") {
    const CucModel m = random_model(4, 55);
    const Matrix v = random_variances(30, 4, 56);
    const VolatilityPaths paths = reconstruct_H(m, v);
    const Matrix rho = conditional_correlations(paths);
    CHECK(rho.cols() == 6);  // pairs (1,2)..(3,4)
    CHECK(rho.maxCoeff() <= 1.0);
    CHECK(rho.minCoeff() >= -1.0);
    // spot-check one entry against the H definition
    const Matrix& H = paths.H[17];
    CHECK(rho(17, 0) ==
          doctest::Approx(H(0, 1) / std::sqrt(H(0, 0) * H(1, 1))).epsilon(1e-12));
}

TEST_CASE("reconstruction: portfolio variance cross formula equals b1' H b2") {
    Rng rng(2222);
    std::normal_distribution<double> gauss;
    for (int rep = 0; rep < 100; ++rep) {
        const int d = 2 + rep % 4;
        const CucModel m = random_model(d, 300u + static_cast<unsigned>(rep));
        const Matrix v = random_variances(5, d, 400u + static_cast<unsigned>(rep));
        const VolatilityPaths paths = reconstruct_H(m, v);
        Vector b1(d), b2(d);
        for (int i = 0; i < d; ++i) {
            b1(i) = gauss(rng);
            b2(i) = gauss(rng);
        }
        const Vector own = portfolio_vol(m, v, b1);
        const Vector cross = portfolio_vol(m, v, b1, &b2);
        for (int t = 0; t < 5; ++t) {
            const Matrix& H = paths.H[static_cast<std::size_t>(t)];
            CHECK(std::abs(own(t) - b1.dot(H * b1)) < 1e-10);
            CHECK(std::abs(cross(t) - b1.dot(H * b2)) < 1e-10);
        }
    }
}

TEST_CASE("reconstruction: portfolio weight validation") {
    const CucModel m = random_model(3, 1);
    const Matrix v = random_variances(4, 3, 2);
    CHECK_THROWS_AS(portfolio_vol(m, v, Vector::Ones(2)), DimensionError);
    Vector bad = Vector::Ones(3);
    bad(1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(portfolio_vol(m, v, bad), DataError);
}
