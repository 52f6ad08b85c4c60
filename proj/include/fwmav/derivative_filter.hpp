#pragma once

#include <Eigen/Core>

#include "fwmav/errors.hpp"

namespace fwmav {

// Causal derivative estimator: backward difference followed by a first-order
// low-pass. Used for the signals the control laws need but cannot measure
// (angular acceleration, vertical acceleration, Euler-rate derivatives).
// The first sample only primes the filter and reports a zero derivative.
class DerivativeFilter {
public:
    DerivativeFilter(double time_constant, double dt) : dt_(dt) {
        if (!(time_constant > 0.0) || !(dt > 0.0))
            throw ConfigError("derivative filter requires positive time constant and dt");
        alpha_ = dt / (time_constant + dt);
    }

    void reset() {
        primed_ = false;
        estimate_ = 0.0;
    }

    double update(double x) {
        if (!primed_) {
            prev_ = x;
            primed_ = true;
            estimate_ = 0.0;
            return estimate_;
        }
        const double raw = (x - prev_) / dt_;
        prev_ = x;
        estimate_ += alpha_ * (raw - estimate_);
        return estimate_;
    }

    double estimate() const { return estimate_; }

private:
    double dt_;
    double alpha_{0.0};
    double prev_{0.0};
    double estimate_{0.0};
    bool primed_{false};
};

// Component-wise derivative estimate of a 3-vector signal.
class DerivativeFilter3 {
public:
    DerivativeFilter3(double time_constant, double dt)
        : f_{DerivativeFilter(time_constant, dt), DerivativeFilter(time_constant, dt),
             DerivativeFilter(time_constant, dt)} {}

    void reset() {
        for (auto& f : f_) f.reset();
    }

    Eigen::Vector3d update(const Eigen::Vector3d& x) {
        return {f_[0].update(x(0)), f_[1].update(x(1)), f_[2].update(x(2))};
    }

private:
    DerivativeFilter f_[3];
};

}  // namespace fwmav
