#include "fwmav/plant.hpp"

#include <cmath>
#include <cstdio>

#include <Eigen/Geometry>

namespace fwmav {

SimState::Vec SimState::pack() const {
    Vec v;
    v << pos, vel, att.vec(), omega.vec(), f_z_lag, tau_lag;
    return v;
}

SimState SimState::unpack(const Vec& v) {
    SimState s;
    s.pos = v.segment<3>(0);
    s.vel = v.segment<3>(3);
    s.att = Attitude::from_vec(v.segment<3>(6));
    s.omega = BodyRates::from_vec(v.segment<3>(9));
    s.f_z_lag = v(12);
    s.tau_lag = v.segment<3>(13);
    return s;
}

Plant::Plant(const RobotParams& params, const WingGeometry& geometry, const OffsetSpec& offsets)
    : params_(params),
      offsets_(offsets),
      nominal_(build_mixing_matrix(geometry)),
      true_(build_mixing_matrix(geometry, offsets)),
      nominal_alloc_(nominal_) {}

Eigen::Vector4d Plant::lagged_wing_forces(const SimState& state) const {
    return nominal_alloc_.wing_forces(state.f_z_lag, state.tau_lag);
}

Wrench Plant::applied_wrench(const SimState& state) const {
    const Eigen::Vector4d f_w = lagged_wing_forces(state);
    return body_wrench(true_, f_w + offsets_.d_fw);
}

Wrench Plant::exact_offset_wrench(const SimState& state) const {
    const Eigen::Vector4d f_w = lagged_wing_forces(state);
    const Wrench nominal = body_wrench(nominal_, f_w);
    const Wrench applied = body_wrench(true_, f_w + offsets_.d_fw);
    return {nominal.force - applied.force, nominal.torque - applied.torque};
}

SimState::Vec Plant::derivative(const SimState& state, const WrenchDemand& demand) const {
    const Wrench applied = applied_wrench(state);
    const Eigen::Matrix3d r = rotation_matrix(state.att);
    const Eigen::Vector3d omega = state.omega.vec();
    const Eigen::Vector3d j_omega = params_.inertia.cwiseProduct(omega);

    SimState::Vec d;
    d.segment<3>(0) = state.vel;
    d.segment<3>(3) = r * applied.force / params_.mass -
                      Eigen::Vector3d{0.0, 0.0, params_.gravity};
    d.segment<3>(6) = attitude_rate_from_body_rates(state.att, state.omega);
    d.segment<3>(9) = (applied.torque - omega.cross(j_omega)).cwiseQuotient(params_.inertia);
    d(12) = (demand.f_z - state.f_z_lag) / params_.t_lag;
    d.segment<3>(13) = (demand.tau - state.tau_lag) / params_.t_lag;
    return d;
}

SimState Plant::step(const SimState& state, const WrenchDemand& demand, double dt) const {
    const SimState::Vec x0 = state.pack();
    const SimState::Vec k1 = derivative(state, demand);
    const SimState::Vec k2 = derivative(SimState::unpack(x0 + 0.5 * dt * k1), demand);
    const SimState::Vec k3 = derivative(SimState::unpack(x0 + 0.5 * dt * k2), demand);
    const SimState::Vec k4 = derivative(SimState::unpack(x0 + dt * k3), demand);
    const SimState::Vec x1 = x0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    for (int i = 0; i < x1.size(); ++i) {
        if (!(std::abs(x1(i)) <= kDivergenceLimit)) {
            char msg[128];
            std::snprintf(msg, sizeof msg,
                          "state component %d diverged to %.3e (limit %.1e)", i, x1(i),
                          kDivergenceLimit);
            throw NumericalDivergenceError(msg);
        }
    }
    return SimState::unpack(x1);
}

SimState Plant::hover_state(const RobotParams& params) {
    SimState s;
    s.f_z_lag = params.mass * params.gravity;
    return s;
}

}  // namespace fwmav
