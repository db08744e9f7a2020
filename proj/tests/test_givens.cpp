#include "cucgarch/givens.hpp"
#include "cucgarch/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace cucgarch;

TEST_CASE("givens: zero angles give the identity exactly") {
    for (int d : {2, 3, 4, 6}) {
        const Matrix A = givens_compose(Vector::Zero(angle_count(d)), d);
        CHECK((A - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("givens: quarter turn at d=2 has the documented sign convention") {
    Vector phi(1);
    phi << std::numbers::pi / 2.0;
    const Matrix A = givens_compose(phi, 2);
    // cos(pi/2) is not exactly zero in floating point, so allow 1e-16 there
    CHECK(std::abs(A(0, 0)) < 1e-15);
    CHECK(A(0, 1) == 1.0);
    CHECK(A(1, 0) == -1.0);
    CHECK(std::abs(A(1, 1)) < 1e-15);
}

TEST_CASE("givens: composed matrices are orthogonal") {
    Rng rng(12345);
    std::uniform_real_distribution<double> uni(-std::numbers::pi, std::numbers::pi);
    for (int d = 2; d <= 6; ++d) {
        for (int rep = 0; rep < 50; ++rep) {
            Vector phi(angle_count(d));
            for (int i = 0; i < phi.size(); ++i) phi(i) = uni(rng);
            CHECK(orthogonality_error(givens_compose(phi, d)) < 1e-12);
        }
    }
}

TEST_CASE("givens: d=2 matches the closed form for any angle") {
    Rng rng(777);
    std::uniform_real_distribution<double> uni(-std::numbers::pi, std::numbers::pi);
    for (int rep = 0; rep < 100; ++rep) {
        Vector phi(1);
        phi(0) = uni(rng);
        const Matrix A = givens_compose(phi, 2);
        const double c = std::cos(phi(0)), s = std::sin(phi(0));
        CHECK(A(0, 0) == c);
        CHECK(A(0, 1) == s);
        CHECK(A(1, 0) == -s);
        CHECK(A(1, 1) == c);
    }
}

TEST_CASE("wrap_angles maps into (-pi, pi] and preserves the rotation") {
    Vector phi(3);
    phi << 3.5 * std::numbers::pi, -std::numbers::pi, 0.25;
    const Vector w = wrap_angles(phi);
    for (int i = 0; i < w.size(); ++i) {
        CHECK(w(i) > -std::numbers::pi);
        CHECK(w(i) <= std::numbers::pi);
        CHECK(std::cos(w(i)) == doctest::Approx(std::cos(phi(i))).epsilon(1e-12));
        CHECK(std::sin(w(i)) == doctest::Approx(std::sin(phi(i))).epsilon(1e-12));
    }
}

TEST_CASE("d_distance: zero exactly on signed column permutations") {
    for (int d : {2, 3, 5}) {
        const Matrix A = random_orthogonal(d, 42u + static_cast<unsigned>(d));
        Matrix B(d, d);
        // reversed columns with alternating signs
        for (int j = 0; j < d; ++j) B.col(j) = (j % 2 ? -1.0 : 1.0) * A.col(d - 1 - j);
        CHECK(d_distance(A, B) < 1e-15);
        CHECK(d_distance(A, A) == 0.0);
    }
}

TEST_CASE("d_distance: positive away from the identification class, bounded by 1") {
    const Matrix A = Matrix::Identity(3, 3);
    const Matrix B = random_orthogonal(3, 9001);
    const double dd = d_distance(A, B);
    CHECK(dd > 0.0);
    CHECK(dd <= 1.0);
    CHECK(d_distance(A, B) == doctest::Approx(d_distance(B, A)).epsilon(1e-12));
}

TEST_CASE("match_components recovers a planted signed permutation") {
    const Matrix A = random_orthogonal(4, 314);
    const std::vector<int> true_perm{2, 0, 3, 1};
    const std::vector<int> true_sign{1, -1, -1, 1};
    Matrix B(4, 4);
    for (int i = 0; i < 4; ++i)
        B.col(true_perm[static_cast<std::size_t>(i)]) =
            true_sign[static_cast<std::size_t>(i)] * A.col(i);
    const auto [perm, sign] = match_components(A, B);
    CHECK(perm == true_perm);
    CHECK(sign == true_sign);
}

TEST_CASE("random_orthogonal is deterministic in the seed") {
    const Matrix A = random_orthogonal(5, 11);
    const Matrix B = random_orthogonal(5, 11);
    const Matrix C = random_orthogonal(5, 12);
    CHECK((A - B).cwiseAbs().maxCoeff() == 0.0);
    CHECK((A - C).cwiseAbs().maxCoeff() > 1e-3);
}
