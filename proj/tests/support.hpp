#pragma once

// Shared helpers for the closed-loop sliding-dynamics property suites: the
// attitude loop reduces to T J s_dot + (J + K) s = tau_tilde with
// tau_tilde_dot = -Gamma s per axis, and the vertical loop to
// T s_dot + (1 + k_z) s = f_tilde / m with f_tilde_dot = -gamma_z s / m.
// Both carry a Lyapunov function that must never increase along trajectories.

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

namespace fwmav::testsupport {

struct LyapunovRun {
    double max_increase{0.0};  // largest step-to-step growth of V
    double final_s_norm{0.0};  // |s| (or its norm) at the end of the run
};

// One attitude axis: state x = (s, tau_tilde).
inline Eigen::Vector2d attitude_axis_rhs(const Eigen::Vector2d& x, double t_lag, double j,
                                         double k, double gamma) {
    return {(x(1) - (j + k) * x(0)) / (t_lag * j), -gamma * x(0)};
}

// Simulates the three decoupled attitude sliding axes for `duration` seconds
// and tracks V = 1/2 sum(T J_i s_i^2) + sum(tau_tilde_i^2 / (2 Gamma_i)).
inline LyapunovRun run_attitude_sliding(const Eigen::Vector3d& inertia, double t_lag,
                                        const Eigen::Vector3d& k_omega,
                                        const Eigen::Vector3d& gamma_omega,
                                        const Eigen::Vector3d& s0,
                                        const Eigen::Vector3d& tau_tilde0,
                                        double duration, double dt) {
    Eigen::Matrix<double, 2, 3> x;
    x.row(0) = s0.transpose();
    x.row(1) = tau_tilde0.transpose();

    auto lyapunov = [&]() {
        double v = 0.0;
        for (int i = 0; i < 3; ++i) {
            v += 0.5 * t_lag * inertia(i) * x(0, i) * x(0, i);
            v += x(1, i) * x(1, i) / (2.0 * gamma_omega(i));
        }
        return v;
    };

    LyapunovRun out;
    double v_prev = lyapunov();
    const int steps = static_cast<int>(std::lround(duration / dt));
    for (int k = 0; k < steps; ++k) {
        for (int i = 0; i < 3; ++i) {
            const Eigen::Vector2d xi = x.col(i);
            const auto f = [&](const Eigen::Vector2d& y) {
                return attitude_axis_rhs(y, t_lag, inertia(i), k_omega(i), gamma_omega(i));
            };
            const Eigen::Vector2d k1 = f(xi);
            const Eigen::Vector2d k2 = f(xi + 0.5 * dt * k1);
            const Eigen::Vector2d k3 = f(xi + 0.5 * dt * k2);
            const Eigen::Vector2d k4 = f(xi + dt * k3);
            x.col(i) = xi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        const double v = lyapunov();
        out.max_increase = std::max(out.max_increase, v - v_prev);
        v_prev = v;
    }
    out.final_s_norm = x.row(0).norm();
    return out;
}

// Vertical loop: state x = (s, f_tilde), V = T s^2 / 2 + f_tilde^2 / (2 gamma_z).
inline LyapunovRun run_vertical_sliding(double mass, double t_lag, double k_z, double gamma_z,
                                        double s0, double f_tilde0, double duration,
                                        double dt) {
    Eigen::Vector2d x{s0, f_tilde0};
    auto lyapunov = [&]() {
        return 0.5 * t_lag * x(0) * x(0) + x(1) * x(1) / (2.0 * gamma_z);
    };
    const auto f = [&](const Eigen::Vector2d& y) {
        return Eigen::Vector2d{(y(1) / mass - (1.0 + k_z) * y(0)) / t_lag,
                               -gamma_z * y(0) / mass};
    };

    LyapunovRun out;
    double v_prev = lyapunov();
    const int steps = static_cast<int>(std::lround(duration / dt));
    for (int k = 0; k < steps; ++k) {
        const Eigen::Vector2d k1 = f(x);
        const Eigen::Vector2d k2 = f(x + 0.5 * dt * k1);
        const Eigen::Vector2d k3 = f(x + 0.5 * dt * k2);
        const Eigen::Vector2d k4 = f(x + dt * k3);
        x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double v = lyapunov();
        out.max_increase = std::max(out.max_increase, v - v_prev);
        v_prev = v;
    }
    out.final_s_norm = std::abs(x(0));
    return out;
}

}  // namespace fwmav::testsupport
