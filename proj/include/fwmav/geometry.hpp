#pragma once

#include <Eigen/Core>

#include "fwmav/errors.hpp"

namespace fwmav {

// ZYX (yaw-pitch-roll) Euler angles of the body frame in the global frame.
struct Attitude {
    double phi{0.0};    // roll (rad)
    double theta{0.0};  // pitch (rad)
    double psi{0.0};    // yaw (rad)

    Eigen::Vector3d vec() const { return {phi, theta, psi}; }
    static Attitude from_vec(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }
};

// Angular velocity of the body expressed in body axes.
struct BodyRates {
    double x{0.0};  // rad/s
    double y{0.0};  // rad/s
    double z{0.0};  // rad/s

    Eigen::Vector3d vec() const { return {x, y, z}; }
    static BodyRates from_vec(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }
};

// Attitude kinematics become non-invertible as |cos(pitch)| -> 0; below this
// threshold the conversion to Euler rates raises GimbalLockError.
inline constexpr double kGimbalLockCosPitch = 1e-6;

// Body-to-global rotation matrix, R = Rz(psi) * Ry(theta) * Rx(phi).
Eigen::Matrix3d rotation_matrix(const Attitude& att);

// Matrix G mapping Euler-angle rates to body rates, omega = G * eta_dot.
// Depends on roll and pitch only.
Eigen::Matrix3d attitude_rate_matrix(const Attitude& att);

// Euler-angle rates from body rates, eta_dot = G^-1 * omega.
// Throws GimbalLockError when |cos(theta)| <= kGimbalLockCosPitch.
Eigen::Vector3d attitude_rate_from_body_rates(const Attitude& att, const BodyRates& omega);

}  // namespace fwmav
