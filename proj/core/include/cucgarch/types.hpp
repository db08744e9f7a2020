#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace cucgarch {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Input data is malformed or violates a precondition (bad CSV cell,
/// singular covariance, too few rows, ...).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes of two operands do not match.
class DimensionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative fit exhausted its budget without meeting its stopping rule.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// T x d panel of returns with column labels and optional row timestamps.
struct ReturnPanel {
    Matrix values;                        // T x d
    std::vector<std::string> labels;      // size d
    std::vector<std::string> timestamps;  // empty, or size T

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }

    /// Checks finiteness, label/column agreement, timestamp length and
    /// the minimum-length requirement T >= d + 2. Throws DataError.
    void validate() const;
};

}  // namespace cucgarch
