#include "fwmav/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Geometry>

namespace fwmav {

void ControlGains::validate() const {
    std::string problems;
    auto check = [&](bool ok, const char* what) {
        if (!ok) {
            if (!problems.empty()) problems += "; ";
            problems += what;
        }
    };
    check(h_x > 0.0, "h_x must be positive");
    check(h_y > 0.0, "h_y must be positive");
    check((k_eta.array() > 0.0).all(), "k_eta entries must be positive");
    check((lambda_omega.array() > 0.0).all(), "lambda_omega entries must be positive");
    check((k_omega.array() > 0.0).all(), "k_omega entries must be positive");
    check((gamma_omega.array() > 0.0).all(), "gamma_omega entries must be positive");
    check(lambda_z > 0.0, "lambda_z must be positive");
    check(k_z > 0.0, "k_z must be positive");
    check(gamma_z > 0.0, "gamma_z must be positive");
    check(attitude_target_clamp >= 0.0, "attitude_target_clamp must be nonnegative");
    check(derivative_filter_tau > 0.0, "derivative_filter_tau must be positive");
    if (!problems.empty()) throw ConfigError("invalid control gains: " + problems);
}

AttitudeTargets velocity_to_attitude_targets(double v_x_body, double v_y_body,
                                             const Targets& targets, const ControlGains& gains,
                                             double gravity) {
    AttitudeTargets out;
    out.theta_d = -gains.h_x * (v_x_body - targets.v_x) / gravity;
    out.phi_d = gains.h_y * (v_y_body - targets.v_y) / gravity;
    if (gains.attitude_target_clamp > 0.0) {
        const double c = gains.attitude_target_clamp;
        out.theta_d = std::clamp(out.theta_d, -c, c);
        out.phi_d = std::clamp(out.phi_d, -c, c);
    }
    return out;
}

AttitudeLawResult attitude_adaptive_control(const Attitude& att, const BodyRates& omega,
                                            const Eigen::Vector3d& eta_d,
                                            const Eigen::Vector3d& eta_dot,
                                            const Eigen::Vector3d& eta_ddot_est,
                                            const Eigen::Vector3d& omega_dot_est,
                                            const AdaptiveEstimates& estimates,
                                            const ControlGains& gains,
                                            const RobotParams& params) {
    const Eigen::Matrix3d g = attitude_rate_matrix(att);
    const Eigen::Vector3d w = omega.vec();
    const Eigen::Vector3d e_eta = att.vec() - eta_d;

    // Desired body rates from first-order Euler-error decay; the derivatives
    // neglect the rate of change of G and of the attitude target.
    const Eigen::Vector3d omega_d = -g * gains.k_eta.cwiseProduct(e_eta);
    const Eigen::Vector3d omega_dot_d = -g * gains.k_eta.cwiseProduct(eta_dot);
    const Eigen::Vector3d omega_ddot_d = -g * gains.k_eta.cwiseProduct(eta_ddot_est);

    const Eigen::Vector3d e_omega = w - omega_d;
    const Eigen::Vector3d omega_dot_r = omega_dot_d - gains.lambda_omega.cwiseProduct(e_omega);
    const Eigen::Vector3d omega_ddot_r =
        omega_ddot_d - gains.lambda_omega.cwiseProduct(omega_dot_est - omega_dot_d);
    const Eigen::Vector3d s = omega_dot_est - omega_dot_r;

    const Eigen::Vector3d j_omega = params.inertia.cwiseProduct(w);
    const Eigen::Vector3d coriolis = w.cross(j_omega);
    const Eigen::Vector3d coriolis_dot =
        omega_dot_est.cross(j_omega) + w.cross(params.inertia.cwiseProduct(omega_dot_est));

    AttitudeLawResult out;
    out.s_omega = s;
    out.omega_d = omega_d;
    out.tau_d = -gains.k_omega.cwiseProduct(s) + params.inertia.cwiseProduct(omega_dot_r) +
                coriolis +
                params.t_lag * (params.inertia.cwiseProduct(omega_ddot_r) + coriolis_dot) +
                estimates.tau_o_hat;
    out.tau_o_hat_rate = -gains.gamma_omega.cwiseProduct(s);
    return out;
}

VerticalLawResult vertical_adaptive_control(double z, double z_dot, double z_ddot_est,
                                            const Targets& targets,
                                            const AdaptiveEstimates& estimates,
                                            const ControlGains& gains,
                                            const RobotParams& params) {
    const double lz = gains.lambda_z;
    double s = 0.0, z_ddot_r = 0.0, z_dddot_r = 0.0;
    if (targets.vertical_mode == VerticalMode::velocity) {
        const double e_dot = z_dot - targets.v_z;
        z_ddot_r = -lz * e_dot;
        z_dddot_r = -lz * z_ddot_est;
        s = z_ddot_est - z_ddot_r;
    } else {
        const double e = z - targets.z;
        z_ddot_r = -2.0 * lz * z_dot - lz * lz * e;
        z_dddot_r = -2.0 * lz * z_ddot_est - lz * lz * z_dot;
        s = z_ddot_est - z_ddot_r;
    }

    VerticalLawResult out;
    out.s_z = s;
    out.f_dz = params.mass * (-gains.k_z * s + z_ddot_r + params.t_lag * z_dddot_r +
                              params.gravity) +
               estimates.f_oz_hat;
    out.f_oz_hat_rate = -(gains.gamma_z / params.mass) * s;
    return out;
}

ControlOutput allocate_output(const Allocator& alloc, const WingForceModel& model,
                              double f_dz, const Eigen::Vector3d& tau_d) {
    const Eigen::Vector4d f_wd = alloc.wing_forces(f_dz, tau_d);
    const Eigen::Vector4d v_d = model.amplitudes(f_wd);
    const Eigen::Vector4d f_w_real = model.forces(v_d);
    const Eigen::Vector4d realized = alloc.stacked_wrench(f_w_real);

    ControlOutput out;
    out.amplitudes = v_d;
    out.demand.f_z = realized(0);
    out.demand.tau = realized.tail<3>();
    out.diag.f_dz = f_dz;
    out.diag.tau_d = tau_d;
    out.diag.wing_force_demand = f_wd;
    out.diag.amplitude_demand = v_d;
    for (int i = 0; i < 4; ++i)
        if (std::abs(f_w_real(i) - f_wd(i)) > 1e-15) ++out.diag.clamped_wings;
    return out;
}

AdaptiveController::AdaptiveController(const ControlGains& gains, const RobotParams& params,
                                       const MixingMatrix& nominal_mix,
                                       const WingForceModel& force_model,
                                       const Targets& targets, double dt)
    : gains_(gains),
      params_(params),
      alloc_(nominal_mix),
      force_model_(force_model),
      targets_(targets),
      dt_(dt),
      eta_ddot_filter_(gains.derivative_filter_tau, dt),
      omega_dot_filter_(gains.derivative_filter_tau, dt),
      z_ddot_filter_(gains.derivative_filter_tau, dt) {
    gains_.validate();
    if (!(dt > 0.0)) throw ConfigError("control period must be positive");
}

ControlOutput AdaptiveController::step(const SimState& state) {
    const Eigen::Matrix3d r = rotation_matrix(state.att);
    const Eigen::Vector3d v_body = r.transpose() * state.vel;

    const AttitudeTargets att_t =
        velocity_to_attitude_targets(v_body(0), v_body(1), targets_, gains_, params_.gravity);
    const double psi_d = gains_.yaw_feedforward_off ? state.att.psi : targets_.psi;
    const Eigen::Vector3d eta_d{att_t.phi_d, att_t.theta_d, psi_d};

    const Eigen::Vector3d eta_dot = attitude_rate_from_body_rates(state.att, state.omega);
    const Eigen::Vector3d eta_ddot_est = eta_ddot_filter_.update(eta_dot);
    const Eigen::Vector3d omega_dot_est = omega_dot_filter_.update(state.omega.vec());
    const double z_ddot_est = z_ddot_filter_.update(state.vel(2));

    const AttitudeLawResult att_res =
        attitude_adaptive_control(state.att, state.omega, eta_d, eta_dot, eta_ddot_est,
                                  omega_dot_est, estimates_, gains_, params_);
    const VerticalLawResult vert_res = vertical_adaptive_control(
        state.pos(2), state.vel(2), z_ddot_est, targets_, estimates_, gains_, params_);

    ControlOutput out = allocate_output(alloc_, force_model_, vert_res.f_dz, att_res.tau_d);
    out.diag.s_omega = att_res.s_omega;
    out.diag.s_z = vert_res.s_z;
    out.diag.tau_o_hat = estimates_.tau_o_hat;
    out.diag.f_oz_hat = estimates_.f_oz_hat;

    // Advance the offset estimates after forming the demand for this tick.
    estimates_.tau_o_hat += att_res.tau_o_hat_rate * dt_;
    estimates_.f_oz_hat += vert_res.f_oz_hat_rate * dt_;
    return out;
}

}  // namespace fwmav
