#pragma once

#include <vector>

#include "fwmav/controllers.hpp"
#include "fwmav/trace.hpp"

namespace fwmav {

// Half-width of the settling band, fraction of step magnitude.
inline constexpr double kSettlingBand = 0.05;
// Excursion opposite the step that counts as a reverse response, fraction of
// step magnitude, and how long it must persist.
inline constexpr double kReverseBand = 0.05;
inline constexpr double kReverseMinDuration = 0.010;
// Steps smaller than this are treated as "no step": metrics undefined.
inline constexpr double kStepEpsilon = 1e-12;
// Fraction of the trace tail averaged for the steady-state error.
inline constexpr double kSteadyStateTail = 0.05;

struct ChannelMetrics {
    bool defined = false;
    bool settled = false;
    double settling_time = 0.0;
    double overshoot_pct = 0.0;
    bool reverse_response = false;
    double steady_state_error_pct = 0.0;
};

// Channels follow the plotted quantities: body-frame velocities plus yaw.
// In position vertical mode the v_z slot carries altitude z instead.
struct ResponseMetrics {
    ChannelMetrics v_x;
    ChannelMetrics v_y;
    ChannelMetrics v_z;
    ChannelMetrics psi;
};

// Step metrics for one signal: value[0] is the initial level, target the
// commanded final level.
//  - settling time: earliest sample time after which every sample stays
//    within +-kSettlingBand * |step| of the target
//  - overshoot: peak excursion past the target in the step direction, % of
//    step magnitude, floored at zero
//  - reverse response: an excursion below the initial level (against the
//    step direction) exceeding kReverseBand * |step| sustained for at least
//    kReverseMinDuration, before the response first crosses the step
//    midpoint
//  - steady-state error: |mean over the trailing kSteadyStateTail of the
//    trace - target|, % of step magnitude
ChannelMetrics compute_channel_metrics(const std::vector<double>& time,
                                       const std::vector<double>& value,
                                       double target);

ResponseMetrics compute_step_metrics(const std::vector<TraceRecord>& trace,
                                     const Targets& targets);

}  // namespace fwmav
