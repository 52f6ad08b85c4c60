#pragma once

#include <Eigen/Core>

#include "fwmav/errors.hpp"

namespace fwmav {

inline constexpr int kCareMaxIterations = 10000;
inline constexpr double kCareTolerance = 1e-10;

// Solves the continuous algebraic Riccati equation
//   A' P + P A - P B R^-1 B' P + Q = 0
// by the matrix sign-function method with determinant scaling. Requires
// (A, B) stabilizable, Q >= 0 detectable, R > 0. Throws RiccatiError when the
// iteration fails to converge, the extracted solution does not satisfy the
// equation, or the inputs are malformed.
Eigen::MatrixXd solve_care(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           const Eigen::MatrixXd& q, const Eigen::MatrixXd& r);

}  // namespace fwmav
