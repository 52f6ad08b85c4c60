#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fwmav/allocation.hpp"
#include "fwmav/controllers.hpp"
#include "fwmav/lqi.hpp"
#include "fwmav/plant.hpp"

namespace fwmav {

enum class ControllerKind { adaptive, lqi };

enum class OffsetCase { none, case1, case2, custom };

// Wing force model knobs; the model itself is anchored to the scenario's
// mass and tilt via WingForceModel::from_hover_point.
struct WingModelConfig {
    double v_hover{20.0};  // V
    bool clamp_enabled{false};
    double v_min{0.0};   // V
    double v_max{40.0};  // V
};

// Everything one run needs. Defaults reproduce the reference vehicle and
// gain set; builtin scenarios override targets and offsets only.
struct Scenario {
    std::string name{"custom"};
    ControllerKind controller{ControllerKind::adaptive};
    RobotParams robot;
    WingGeometry geometry;
    OffsetCase offset_case{OffsetCase::none};
    OffsetSpec offsets;
    ControlGains gains;
    LqiWeights lqi_weights;
    WingModelConfig wing_model;
    Targets targets;
    // Lag states are ignored here; runs always start them at hover trim.
    SimState initial_state;
    AdaptiveEstimates initial_estimates;
    std::string estimates_file;  // optional hot start, overrides inline estimates
    double duration{5.0};        // s
    double control_rate{1000.0}; // Hz
    double dt_plant{1.0e-4};     // s
    unsigned long seed{0};       // reserved for randomized sweeps

    double dt_ctrl() const { return 1.0 / control_rate; }
    int steps_per_tick() const;

    // Throws ConfigError listing every problem found, not just the first.
    void validate() const;
};

// INI-style parser: [section] headers, key = value lines, '#'/';' comments.
// Unknown sections or keys, duplicate keys, and malformed values are
// reported with the source name and line number. Angle keys accept either a
// _deg or a _rad suffix where both are listed in the format documentation.
Scenario parse_scenario(std::istream& in, const std::string& source_name);
Scenario load_scenario(const std::string& path);

// Canonical serialization (angles in radians, %.17g). parse of the output
// reproduces the scenario exactly; used for equality in tests and for
// `validate --dump`.
std::string scenario_to_ini(const Scenario& sc);

const std::vector<std::string>& builtin_scenario_names();
Scenario builtin_scenario(const std::string& name);

// Builtin name, else a file path.
Scenario resolve_scenario(const std::string& name_or_path);

}  // namespace fwmav
