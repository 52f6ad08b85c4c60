#pragma once

#include <Eigen/Core>

#include "fwmav/controllers.hpp"
#include "fwmav/plant.hpp"

namespace fwmav {

// Weights of the LQI baseline: Bryson-style normalization (typical state and
// input magnitudes) times dimensionless relative weights. The defaults were
// tuned once so the no-offset closed-loop response matches the adaptive
// controller's settling behavior; scenarios may override any entry.
struct LqiWeights {
    // typical magnitudes used for normalization
    double max_velocity{0.5};          // m/s
    double max_tilt{0.3};              // rad
    double max_yaw{1.0};               // rad
    double max_rate{6.0};              // rad/s
    double max_force_lag{0.01};        // N
    double max_torque_lag{5.0e-5};     // N m
    double max_velocity_integral{0.25};  // m
    double max_vertical_integral{0.25};  // m (velocity mode) or m s (position mode)
    double max_yaw_integral{0.25};     // rad s
    double max_altitude{0.1};          // m (position mode)
    double max_force_cmd{0.01};        // N
    double max_torque_cmd{5.0e-5};     // N m

    // relative weights
    double w_velocity{1.0};
    double w_vertical{0.01};
    double w_tilt{0.3};
    double w_yaw{0.5};
    double w_rate{0.05};
    double w_force_lag{1.0e-3};
    double w_torque_lag{1.0e-3};
    double w_velocity_integral{2.0};
    double w_vertical_integral{0.055};
    double w_yaw_integral{5.0};
    double w_altitude{1.0};
    double w_force_cmd{1.0};
    double w_torque_cmd{1.0};
};

// Hover linearization used for the synthesis, with named state indices.
// Velocity mode (17 states):
//   [v_x^B, v_y^B, z_dot, phi, theta, psi, omega(3), df_z, tau(3), int(4)]
// Position mode (18 states) additionally carries z ahead of z_dot.
// Integrators accumulate the tracking errors of (v_x^B, v_y^B, vertical, psi).
// Inputs are [f_dz - m g, tau_d].
struct LqiModel {
    Eigen::MatrixXd a, b;
    VerticalMode mode{VerticalMode::velocity};
    int i_vx{0}, i_vy{1};
    int i_z{-1};      // position mode only
    int i_zdot{2};
    int i_phi{3}, i_theta{4}, i_psi{5};
    int i_omega{6};   // first of three
    int i_df{9};
    int i_tau{10};    // first of three
    int i_int{13};    // first of four
    int n() const { return static_cast<int>(a.rows()); }
};

LqiModel lqi_linear_model(const RobotParams& params, VerticalMode mode);

// Optimal state-feedback gain, u = -K x, on the model above.
struct LqiGains {
    Eigen::MatrixXd k;
    VerticalMode mode{VerticalMode::velocity};
};

// Synthesizes the LQI gain by solving the Riccati equation on the normalized
// model. Throws RiccatiError when the solve fails or the closed loop is
// unstable.
LqiGains lqi_synthesize(const RobotParams& params, const LqiWeights& weights,
                        VerticalMode mode);

// LQI baseline controller. Feeds back absolute states (references enter only
// through the four tracking-error integrators, giving type-1 servo behavior)
// and routes its wrench demand through the same allocation pipeline as the
// adaptive controller.
class LqiController {
public:
    LqiController(const LqiGains& gains, const RobotParams& params,
                  const MixingMatrix& nominal_mix, const WingForceModel& force_model,
                  const Targets& targets, double dt);

    ControlOutput step(const SimState& state);

    const Eigen::Vector4d& integrators() const { return integrators_; }
    void reset_integrators() { integrators_.setZero(); }

private:
    LqiGains gains_;
    RobotParams params_;
    Allocator alloc_;
    WingForceModel force_model_;
    Targets targets_;
    double dt_;
    LqiModel layout_;
    Eigen::Vector4d integrators_{Eigen::Vector4d::Zero()};
};

}  // namespace fwmav
