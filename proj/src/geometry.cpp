#include "fwmav/geometry.hpp"

#include <cmath>
#include <cstdio>

namespace fwmav {

Eigen::Matrix3d rotation_matrix(const Attitude& att) {
    const double cphi = std::cos(att.phi), sphi = std::sin(att.phi);
    const double cth = std::cos(att.theta), sth = std::sin(att.theta);
    const double cpsi = std::cos(att.psi), spsi = std::sin(att.psi);

    Eigen::Matrix3d r;
    r << cpsi * cth, cpsi * sth * sphi - spsi * cphi, cpsi * sth * cphi + spsi * sphi,
         spsi * cth, spsi * sth * sphi + cpsi * cphi, spsi * sth * cphi - cpsi * sphi,
         -sth,       cth * sphi,                      cth * cphi;
    return r;
}

Eigen::Matrix3d attitude_rate_matrix(const Attitude& att) {
    const double cphi = std::cos(att.phi), sphi = std::sin(att.phi);
    const double cth = std::cos(att.theta), sth = std::sin(att.theta);

    Eigen::Matrix3d g;
    g << 1.0, 0.0,   -sth,
         0.0, cphi,  cth * sphi,
         0.0, -sphi, cth * cphi;
    return g;
}

Eigen::Vector3d attitude_rate_from_body_rates(const Attitude& att, const BodyRates& omega) {
    const double cth = std::cos(att.theta);
    if (std::abs(cth) <= kGimbalLockCosPitch) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "attitude kinematics singular: |cos(pitch)| = %.3e at pitch = %.6f rad",
                      std::abs(cth), att.theta);
        throw GimbalLockError(msg);
    }
    const double cphi = std::cos(att.phi), sphi = std::sin(att.phi);
    const double tth = std::tan(att.theta);

    // Closed-form inverse of the rate matrix G.
    Eigen::Matrix3d ginv;
    ginv << 1.0, sphi * tth,  cphi * tth,
            0.0, cphi,        -sphi,
            0.0, sphi / cth,  cphi / cth;
    return ginv * omega.vec();
}

}  // namespace fwmav
