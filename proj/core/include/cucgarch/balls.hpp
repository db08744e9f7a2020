#pragma once

#include "cucgarch/types.hpp"

namespace cucgarch {

/// Ball collection indexing the conditioning events of the objective:
/// closed Euclidean balls of a common radius around decile-anchored
/// observations.
struct BallFamily {
    Matrix centers;    // m x d, each row one ball center
    double radius = 0.0;
    int k0 = 1;        // maximal conditioning lag
    double epsilon0 = 0.0;  // weight floor for the weighted objective
    int min_count = 0;      // membership guarantee used when the radius was set

    void validate() const;
};

struct BallConfig {
    int min_count = -1;     // < 0: max(30, ceil(0.1 n))
    double epsilon0 = -1.0; // < 0: 1/n
};

/// Builds the ball family for a whitened sample. Centers are the observations
/// having at least one coordinate equal to a decile (10%..90%, nearest rank)
/// of that coordinate's sample; the radius is the smallest common value such
/// that every ball contains at least min_count points. Throws DataError when
/// min_count > n.
BallFamily build_ball_family(const Matrix& X, int k0, const BallConfig& cfg = {});

}  // namespace cucgarch
