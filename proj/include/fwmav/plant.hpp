#pragma once

#include <Eigen/Core>

#include "fwmav/allocation.hpp"
#include "fwmav/geometry.hpp"

namespace fwmav {

// Rigid-body and actuator parameters.
struct RobotParams {
    double mass{2.0e-3};  // kg
    Eigen::Vector3d inertia{1.50e-7, 1.35e-7, 2.21e-7};  // principal moments (kg m^2)
    double t_lag{0.013};  // first-order wing-force lag (s)
    double gravity{9.81}; // m/s^2
};

// Full simulation state. Velocities are global-frame; the lag states hold the
// vertical force and torque actually realized by the wings, which follow the
// demands with first-order dynamics of time constant t_lag.
struct SimState {
    Eigen::Vector3d pos{Eigen::Vector3d::Zero()};   // m, global, Z up
    Eigen::Vector3d vel{Eigen::Vector3d::Zero()};   // m/s, global
    Attitude att;                                   // rad
    BodyRates omega;                                // rad/s, body
    double f_z_lag{0.0};                            // realized vertical force (N)
    Eigen::Vector3d tau_lag{Eigen::Vector3d::Zero()};  // realized torque (N m)

    using Vec = Eigen::Matrix<double, 16, 1>;
    Vec pack() const;
    static SimState unpack(const Vec& v);
};

// Controller demands held constant over an integration step (zero-order hold).
struct WrenchDemand {
    double f_z{0.0};                                 // N
    Eigen::Vector3d tau{Eigen::Vector3d::Zero()};    // N m
};

// A state component beyond this magnitude aborts the run as divergent.
inline constexpr double kDivergenceLimit = 1e6;

// Six-degree-of-freedom plant. The demanded (f_z, tau) pass through the
// first-order lag; the lagged values are converted back to per-wing forces
// through the NOMINAL allocation (what the flight controller believes), and
// those wing forces plus the per-wing force error are pushed through the
// TRUE perturbed mixing matrix to obtain the applied body wrench, including
// any horizontal force components the controller knows nothing about.
class Plant {
public:
    Plant(const RobotParams& params, const WingGeometry& geometry,
          const OffsetSpec& offsets = {});

    // Time derivative of the packed state. Throws GimbalLockError when the
    // attitude kinematics leave their validity region.
    SimState::Vec derivative(const SimState& state, const WrenchDemand& demand) const;

    // One RK4 step of size dt with the demand held constant. Throws
    // NumericalDivergenceError when any resulting component exceeds
    // kDivergenceLimit or is not finite.
    SimState step(const SimState& state, const WrenchDemand& demand, double dt) const;

    // Per-wing forces reconstructed from the current lag states.
    Eigen::Vector4d lagged_wing_forces(const SimState& state) const;

    // Wrench actually applied to the body at the current lag states.
    Wrench applied_wrench(const SimState& state) const;

    // Exact instantaneous offset wrench [f_o; tau_o]: nominal wrench of the
    // lagged wing forces minus the wrench actually applied.
    Wrench exact_offset_wrench(const SimState& state) const;

    const MixingMatrix& nominal_mix() const { return nominal_; }
    const MixingMatrix& true_mix() const { return true_; }
    const RobotParams& params() const { return params_; }

    // At-rest state with the lag trimmed to the nominal hover demand.
    static SimState hover_state(const RobotParams& params);

private:
    RobotParams params_;
    OffsetSpec offsets_;
    MixingMatrix nominal_;
    MixingMatrix true_;
    Allocator nominal_alloc_;
};

}  // namespace fwmav
