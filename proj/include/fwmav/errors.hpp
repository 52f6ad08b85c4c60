#pragma once

#include <stdexcept>
#include <string>

namespace fwmav {

// Base class for every failure the simulator surfaces to callers.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// |cos(pitch)| fell below the invertibility threshold of the attitude
// kinematics. The Euler-angle model has left its validity region and the
// run must abort rather than produce garbage rates.
struct GimbalLockError : Error {
    using Error::Error;
};

// The stacked 4x4 allocation matrix (vertical-force row over the three
// torque rows) is singular or too ill-conditioned to invert reliably.
struct SingularAllocationError : Error {
    using Error::Error;
};

// A state component left the sanity envelope during integration, which
// almost always means an unstable gain set or a broken scenario.
struct NumericalDivergenceError : Error {
    using Error::Error;
};

// The algebraic Riccati solve behind the LQI synthesis failed to converge
// or produced an unstable closed loop.
struct RiccatiError : Error {
    using Error::Error;
};

// A scenario file or programmatic configuration is invalid. The message
// lists every problem found, one clause per problem.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace fwmav
