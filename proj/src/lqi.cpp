#include "fwmav/lqi.hpp"

#include <Eigen/Eigenvalues>

#include "fwmav/care.hpp"

namespace fwmav {

LqiModel lqi_linear_model(const RobotParams& params, VerticalMode mode) {
    LqiModel m;
    m.mode = mode;
    const bool pos = mode == VerticalMode::position;
    const int n = pos ? 18 : 17;
    if (pos) {
        m.i_z = 2;
        m.i_zdot = 3;
        m.i_phi = 4;
        m.i_theta = 5;
        m.i_psi = 6;
        m.i_omega = 7;
        m.i_df = 10;
        m.i_tau = 11;
        m.i_int = 14;
    }

    m.a = Eigen::MatrixXd::Zero(n, n);
    m.b = Eigen::MatrixXd::Zero(n, 4);

    const double g = params.gravity;
    const double t = params.t_lag;

    m.a(m.i_vx, m.i_theta) = g;
    m.a(m.i_vy, m.i_phi) = -g;
    m.a(m.i_zdot, m.i_df) = 1.0 / params.mass;
    if (pos) m.a(m.i_z, m.i_zdot) = 1.0;
    m.a(m.i_phi, m.i_omega + 0) = 1.0;
    m.a(m.i_theta, m.i_omega + 1) = 1.0;
    m.a(m.i_psi, m.i_omega + 2) = 1.0;
    for (int k = 0; k < 3; ++k) {
        m.a(m.i_omega + k, m.i_tau + k) = 1.0 / params.inertia(k);
        m.a(m.i_tau + k, m.i_tau + k) = -1.0 / t;
        m.b(m.i_tau + k, 1 + k) = 1.0 / t;
    }
    m.a(m.i_df, m.i_df) = -1.0 / t;
    m.b(m.i_df, 0) = 1.0 / t;

    // Integrators on the tracked outputs (v_x^B, v_y^B, vertical, psi).
    m.a(m.i_int + 0, m.i_vx) = 1.0;
    m.a(m.i_int + 1, m.i_vy) = 1.0;
    m.a(m.i_int + 2, pos ? m.i_z : m.i_zdot) = 1.0;
    m.a(m.i_int + 3, m.i_psi) = 1.0;
    return m;
}

LqiGains lqi_synthesize(const RobotParams& params, const LqiWeights& w, VerticalMode mode) {
    const LqiModel model = lqi_linear_model(params, mode);
    const int n = model.n();
    const bool pos = mode == VerticalMode::position;

    // State normalization and weights, Bryson style.
    Eigen::VectorXd x_max(n), x_w(n);
    x_max(model.i_vx) = w.max_velocity;
    x_w(model.i_vx) = w.w_velocity;
    x_max(model.i_vy) = w.max_velocity;
    x_w(model.i_vy) = w.w_velocity;
    if (pos) {
        x_max(model.i_z) = w.max_altitude;
        x_w(model.i_z) = w.w_altitude;
    }
    x_max(model.i_zdot) = w.max_velocity;
    x_w(model.i_zdot) = w.w_vertical;
    x_max(model.i_phi) = w.max_tilt;
    x_w(model.i_phi) = w.w_tilt;
    x_max(model.i_theta) = w.max_tilt;
    x_w(model.i_theta) = w.w_tilt;
    x_max(model.i_psi) = w.max_yaw;
    x_w(model.i_psi) = w.w_yaw;
    for (int k = 0; k < 3; ++k) {
        x_max(model.i_omega + k) = w.max_rate;
        x_w(model.i_omega + k) = w.w_rate;
        x_max(model.i_tau + k) = w.max_torque_lag;
        x_w(model.i_tau + k) = w.w_torque_lag;
    }
    x_max(model.i_df) = w.max_force_lag;
    x_w(model.i_df) = w.w_force_lag;
    for (int k = 0; k < 2; ++k) {
        x_max(model.i_int + k) = w.max_velocity_integral;
        x_w(model.i_int + k) = w.w_velocity_integral;
    }
    x_max(model.i_int + 2) = w.max_vertical_integral;
    x_w(model.i_int + 2) = w.w_vertical_integral;
    x_max(model.i_int + 3) = w.max_yaw_integral;
    x_w(model.i_int + 3) = w.w_yaw_integral;

    Eigen::Vector4d u_max{w.max_force_cmd, w.max_torque_cmd, w.max_torque_cmd,
                          w.max_torque_cmd};
    Eigen::Vector4d u_w{w.w_force_cmd, w.w_torque_cmd, w.w_torque_cmd, w.w_torque_cmd};

    // Solve in normalized coordinates for conditioning: x = D xn, u = S un.
    const Eigen::MatrixXd d = x_max.asDiagonal();
    const Eigen::MatrixXd d_inv = x_max.cwiseInverse().asDiagonal();
    const Eigen::MatrixXd s = u_max.asDiagonal();

    const Eigen::MatrixXd an = d_inv * model.a * d;
    const Eigen::MatrixXd bn = d_inv * model.b * s;
    const Eigen::MatrixXd qn = x_w.asDiagonal();
    const Eigen::MatrixXd rn = u_w.asDiagonal();

    const Eigen::MatrixXd p = solve_care(an, bn, qn, rn);
    const Eigen::MatrixXd kn = rn.ldlt().solve(bn.transpose() * p);

    LqiGains gains;
    gains.mode = mode;
    gains.k = s * kn * d_inv;

    const Eigen::MatrixXd a_cl = model.a - model.b * gains.k;
    const Eigen::VectorXcd eig = a_cl.eigenvalues();
    if ((eig.real().array() >= 0.0).any())
        throw RiccatiError("LQI synthesis produced an unstable closed loop");
    return gains;
}

LqiController::LqiController(const LqiGains& gains, const RobotParams& params,
                             const MixingMatrix& nominal_mix,
                             const WingForceModel& force_model, const Targets& targets,
                             double dt)
    : gains_(gains),
      params_(params),
      alloc_(nominal_mix),
      force_model_(force_model),
      targets_(targets),
      dt_(dt),
      layout_(lqi_linear_model(params, gains.mode)) {
    if (!(dt > 0.0)) throw ConfigError("control period must be positive");
    const int expected = gains.mode == VerticalMode::position ? 18 : 17;
    if (gains.k.rows() != 4 || gains.k.cols() != expected)
        throw ConfigError("LQI gain matrix has the wrong shape for its vertical mode");
    if (gains.mode != targets.vertical_mode)
        throw ConfigError("LQI gain vertical mode does not match the targets");
}

ControlOutput LqiController::step(const SimState& state) {
    const Eigen::Matrix3d r = rotation_matrix(state.att);
    const Eigen::Vector3d v_body = r.transpose() * state.vel;
    const bool pos = gains_.mode == VerticalMode::position;

    const LqiModel& layout = layout_;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(layout.n());
    x(layout.i_vx) = v_body(0);
    x(layout.i_vy) = v_body(1);
    if (pos) x(layout.i_z) = state.pos(2);
    x(layout.i_zdot) = state.vel(2);
    x(layout.i_phi) = state.att.phi;
    x(layout.i_theta) = state.att.theta;
    x(layout.i_psi) = state.att.psi;
    x.segment<3>(layout.i_omega) = state.omega.vec();
    x(layout.i_df) = state.f_z_lag - params_.mass * params_.gravity;
    x.segment<3>(layout.i_tau) = state.tau_lag;
    x.segment<4>(layout.i_int) = integrators_;

    const Eigen::Vector4d u = -(gains_.k * x);
    const double f_dz = params_.mass * params_.gravity + u(0);

    ControlOutput out = allocate_output(alloc_, force_model_, f_dz, u.tail<3>());

    // Tracking errors feed the integrators (explicit Euler, after the demand).
    Eigen::Vector4d e;
    e(0) = v_body(0) - targets_.v_x;
    e(1) = v_body(1) - targets_.v_y;
    e(2) = pos ? state.pos(2) - targets_.z : state.vel(2) - targets_.v_z;
    e(3) = state.att.psi - targets_.psi;
    integrators_ += e * dt_;
    return out;
}

}  // namespace fwmav
