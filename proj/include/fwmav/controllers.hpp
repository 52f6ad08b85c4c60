#pragma once

#include <Eigen/Core>

#include "fwmav/allocation.hpp"
#include "fwmav/derivative_filter.hpp"
#include "fwmav/geometry.hpp"
#include "fwmav/plant.hpp"

namespace fwmav {

enum class VerticalMode { velocity, position };

// Commanded setpoints. Horizontal targets are body-frame velocities; the
// vertical channel tracks either a global climb rate or an altitude.
struct Targets {
    double v_x{0.0};   // body-frame X velocity target (m/s)
    double v_y{0.0};   // body-frame Y velocity target (m/s)
    VerticalMode vertical_mode{VerticalMode::velocity};
    double v_z{0.0};   // climb-rate target (m/s), velocity mode
    double z{0.0};     // altitude target (m), position mode
    double psi{0.0};   // yaw target (rad)
};

// Gains of the cascaded adaptive controller. All entries must be positive.
struct ControlGains {
    double h_x{2.0};  // X velocity loop (1/s)
    double h_y{2.0};  // Y velocity loop (1/s)
    Eigen::Vector3d k_eta{10.0, 10.0, 10.0};          // attitude loop (1/s)
    Eigen::Vector3d lambda_omega{10.0, 10.0, 10.0};   // sliding-surface slope (1/s)
    Eigen::Vector3d k_omega{9.50e-8, 8.55e-8, 1.40e-7};    // sliding feedback (N m s)
    Eigen::Vector3d gamma_omega{7.70e-6, 6.93e-6, 1.13e-5};  // torque-offset adaptation
    double lambda_z{2.0};     // vertical sliding-surface slope (1/s)
    double k_z{6.34e-1};      // vertical sliding feedback (1/s)
    double gamma_z{2.05e-4};  // force-offset adaptation
    double attitude_target_clamp{0.3};   // |phi_d|,|theta_d| limit (rad); 0 disables
    double derivative_filter_tau{2.0e-3};  // derivative estimator low-pass (s)
    bool yaw_feedforward_off{false};  // track current yaw instead of psi target

    // Throws ConfigError listing every nonpositive gain.
    void validate() const;
};

// Adaptive estimates of the constant offset wrench components the attitude
// and vertical loops can observe.
struct AdaptiveEstimates {
    Eigen::Vector3d tau_o_hat{Eigen::Vector3d::Zero()};  // torque offset (N m)
    double f_oz_hat{0.0};                                // vertical force offset (N)
};

// Roll/pitch targets realizing the commanded body-frame horizontal
// velocities: theta_d = -h_x (v_x - v_x_d) / g, phi_d = h_y (v_y - v_y_d) / g,
// clamped to +-attitude_target_clamp when the clamp is enabled.
struct AttitudeTargets {
    double phi_d{0.0};
    double theta_d{0.0};
};
AttitudeTargets velocity_to_attitude_targets(double v_x_body, double v_y_body,
                                             const Targets& targets, const ControlGains& gains,
                                             double gravity);

// Attitude law output: the torque demand, the sliding variable, and the rate
// at which the torque-offset estimate should be integrated.
struct AttitudeLawResult {
    Eigen::Vector3d tau_d{Eigen::Vector3d::Zero()};
    Eigen::Vector3d s_omega{Eigen::Vector3d::Zero()};
    Eigen::Vector3d tau_o_hat_rate{Eigen::Vector3d::Zero()};
    Eigen::Vector3d omega_d{Eigen::Vector3d::Zero()};
};

// Sliding-mode-like adaptive attitude law with lag compensation. The caller
// supplies the measured Euler rates plus filtered estimates of the Euler-rate
// derivative and the angular acceleration.
AttitudeLawResult attitude_adaptive_control(const Attitude& att, const BodyRates& omega,
                                            const Eigen::Vector3d& eta_d,
                                            const Eigen::Vector3d& eta_dot,
                                            const Eigen::Vector3d& eta_ddot_est,
                                            const Eigen::Vector3d& omega_dot_est,
                                            const AdaptiveEstimates& estimates,
                                            const ControlGains& gains,
                                            const RobotParams& params);

// Vertical law output: total vertical force demand, sliding variable, and the
// force-offset estimate rate.
struct VerticalLawResult {
    double f_dz{0.0};
    double s_z{0.0};
    double f_oz_hat_rate{0.0};
};

// Adaptive vertical-force law; velocity mode tracks a climb rate, position
// mode an altitude (with zero target climb rate).
VerticalLawResult vertical_adaptive_control(double z, double z_dot, double z_ddot_est,
                                            const Targets& targets,
                                            const AdaptiveEstimates& estimates,
                                            const ControlGains& gains,
                                            const RobotParams& params);

// Per-tick controller telemetry recorded into the trace.
struct ControlDiagnostics {
    Eigen::Vector3d s_omega{Eigen::Vector3d::Zero()};
    double s_z{0.0};
    Eigen::Vector3d tau_o_hat{Eigen::Vector3d::Zero()};
    double f_oz_hat{0.0};
    double f_dz{0.0};
    Eigen::Vector3d tau_d{Eigen::Vector3d::Zero()};
    Eigen::Vector4d wing_force_demand{Eigen::Vector4d::Zero()};
    Eigen::Vector4d amplitude_demand{Eigen::Vector4d::Zero()};
    int clamped_wings{0};
};

// One control tick: wing amplitude demands, the wrench demand the amplitudes
// realize through the nominal model (identical to the raw demand unless
// amplitude clamping bites), and diagnostics.
struct ControlOutput {
    Eigen::Vector4d amplitudes{Eigen::Vector4d::Zero()};
    WrenchDemand demand;
    ControlDiagnostics diag;
};

// Shared back end of both controllers: allocate the wrench demand to per-wing
// forces, convert to amplitudes (clamping if enabled), and report the demand
// those amplitudes realize through the nominal model.
ControlOutput allocate_output(const Allocator& alloc, const WingForceModel& model,
                              double f_dz, const Eigen::Vector3d& tau_d);

// Cascaded adaptive controller: velocity -> attitude targets -> adaptive
// attitude torque plus adaptive vertical force -> per-wing allocation ->
// amplitudes. Owns the derivative filters and integrates the offset
// estimates with explicit Euler at the control period.
class AdaptiveController {
public:
    AdaptiveController(const ControlGains& gains, const RobotParams& params,
                       const MixingMatrix& nominal_mix, const WingForceModel& force_model,
                       const Targets& targets, double dt);

    ControlOutput step(const SimState& state);

    const AdaptiveEstimates& estimates() const { return estimates_; }
    void set_estimates(const AdaptiveEstimates& e) { estimates_ = e; }

private:
    ControlGains gains_;
    RobotParams params_;
    Allocator alloc_;
    WingForceModel force_model_;
    Targets targets_;
    double dt_;
    AdaptiveEstimates estimates_;
    DerivativeFilter3 eta_ddot_filter_;
    DerivativeFilter3 omega_dot_filter_;
    DerivativeFilter z_ddot_filter_;
};

}  // namespace fwmav
