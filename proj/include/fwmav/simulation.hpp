#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fwmav/metrics.hpp"
#include "fwmav/scenario.hpp"
#include "fwmav/trace.hpp"

namespace fwmav {

struct RunResult {
    std::string name{"custom"};
    ControllerKind controller{ControllerKind::adaptive};
    std::vector<TraceRecord> trace;
    ResponseMetrics metrics;
    AdaptiveEstimates final_estimates;   // stays zero for LQI runs
    std::optional<std::string> failure;  // set when the run aborted; trace is partial
    double wall_time_s{0.0};
};

// Validates the scenario, wires plant and controller, and advances the
// closed loop for the configured duration, logging one record per control
// tick (plus the initial one). Numerical failures (divergence, gimbal lock,
// singular allocation, Riccati failure) are captured in `failure` together
// with the trace up to that point; metrics stay undefined then.
RunResult run_scenario(const Scenario& sc);

struct Case3Result {
    RunResult cold;  // the scenario as given
    RunResult hot;   // rerun hot-started from the cold run's final estimates
};

Case3Result run_case3(const Scenario& sc);

struct CompareResult {
    RunResult adaptive;
    RunResult lqi;
};

// Same scenario under both controllers.
CompareResult compare_controllers(const Scenario& sc);

// Adapted-offset persistence: four labeled scalar lines
// (tau_o_hat_x/y/z in N m, f_oz_hat in N).
AdaptiveEstimates read_estimates(const std::string& path);
void write_estimates(const std::string& path, const AdaptiveEstimates& estimates);

// One line per channel per metric.
std::string metrics_report_text(const ResponseMetrics& metrics);
std::string metrics_report_json(const ResponseMetrics& metrics);
std::string compare_report_text(const CompareResult& result);

struct EmitOptions {
    bool plot_script{false};
};

// Writes <out_dir>/<base>_trace.csv, _metrics.txt, _metrics.json, for
// adaptive runs _estimates.txt, and optionally a matplotlib plot script,
// where <base> is "<name>_<controller>". Creates out_dir if needed.
void emit_outputs(const std::string& out_dir, const RunResult& result,
                  const EmitOptions& options = {});

}  // namespace fwmav
