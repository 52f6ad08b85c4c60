#include "fwmav/metrics.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include "fwmav/errors.hpp"

namespace fwmav {

ChannelMetrics compute_channel_metrics(const std::vector<double>& time,
                                       const std::vector<double>& value,
                                       double target) {
    if (time.size() != value.size())
        throw Error("metric input time/value lengths differ");

    ChannelMetrics m;
    if (time.empty()) return m;

    const double v0 = value.front();
    const double step = target - v0;
    const double mag = std::abs(step);
    if (mag < kStepEpsilon) return m;
    m.defined = true;

    const double sgn = step > 0.0 ? 1.0 : -1.0;
    const std::size_t n = value.size();

    // Settling: walk back from the end to the last out-of-band sample.
    const double band = kSettlingBand * mag;
    std::size_t first_settled = 0;
    for (std::size_t i = n; i-- > 0;) {
        if (std::abs(value[i] - target) > band) {
            first_settled = i + 1;
            break;
        }
    }
    if (first_settled < n) {
        m.settled = true;
        m.settling_time = time[first_settled];
    } else {
        m.settled = false;
        m.settling_time = std::numeric_limits<double>::quiet_NaN();
    }

    // Overshoot: peak past the target along the step direction.
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double over = (value[i] - target) * sgn;
        if (over > peak) peak = over;
    }
    m.overshoot_pct = 100.0 * peak / mag;

    // Reverse response: sustained excursion against the step before the
    // response first reaches the midpoint.
    std::size_t midpoint = n;
    for (std::size_t i = 0; i < n; ++i) {
        if ((value[i] - v0) * sgn >= 0.5 * mag) {
            midpoint = i;
            break;
        }
    }
    const double reverse_level = -kReverseBand * mag;
    std::size_t run_start = 0;
    bool in_run = false;
    for (std::size_t i = 0; i < midpoint; ++i) {
        const bool below = (value[i] - v0) * sgn < reverse_level;
        if (below && !in_run) {
            in_run = true;
            run_start = i;
        }
        const bool run_ends = in_run && (!below || i + 1 == midpoint);
        if (run_ends) {
            const std::size_t run_end = below ? i : i - 1;
            if (time[run_end] - time[run_start] >= kReverseMinDuration - 1e-12)
                m.reverse_response = true;
            in_run = false;
        }
    }

    // Steady-state error: mean over the trailing fraction of the trace.
    const double t_end = time.back();
    const double t_tail = t_end - kSteadyStateTail * (t_end - time.front());
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (time[i] >= t_tail) {
            sum += value[i];
            ++count;
        }
    }
    if (count == 0) {
        sum = value.back();
        count = 1;
    }
    m.steady_state_error_pct = 100.0 * std::abs(sum / static_cast<double>(count) - target) / mag;
    return m;
}

ResponseMetrics compute_step_metrics(const std::vector<TraceRecord>& trace,
                                     const Targets& targets) {
    ResponseMetrics metrics;
    if (trace.empty()) return metrics;

    const std::size_t n = trace.size();
    std::vector<double> time(n), vx(n), vy(n), vert(n), psi(n);
    const bool position = targets.vertical_mode == VerticalMode::position;
    for (std::size_t i = 0; i < n; ++i) {
        const TraceRecord& rec = trace[i];
        time[i] = rec.t;
        vx[i] = rec.vel_body(0);
        vy[i] = rec.vel_body(1);
        vert[i] = position ? rec.pos(2) : rec.vel_body(2);
        psi[i] = rec.att.psi;
    }

    metrics.v_x = compute_channel_metrics(time, vx, targets.v_x);
    metrics.v_y = compute_channel_metrics(time, vy, targets.v_y);
    metrics.v_z = compute_channel_metrics(time, vert, position ? targets.z : targets.v_z);
    metrics.psi = compute_channel_metrics(time, psi, targets.psi);
    return metrics;
}

}  // namespace fwmav
