#include "fwmav/scenario.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "fwmav/errors.hpp"

namespace fwmav {

namespace {

std::string num_str(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

constexpr const char* kAxes[3] = {"x", "y", "z"};

class IniParser {
  public:
    IniParser(std::istream& in, std::string source)
        : in_(in), source_(std::move(source)) {}

    Scenario run() {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            const auto comment = line.find_first_of("#;");
            if (comment != std::string::npos) line.erase(comment);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') fail("malformed section header '" + line + "'");
                enter_section(trim(line.substr(1, line.size() - 2)));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) fail("expected 'key = value', got '" + line + "'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) fail("missing key before '='");
            if (value.empty()) fail("missing value for key '" + key + "'");
            if (section_.empty()) fail("key '" + key + "' appears outside any [section]");
            dispatch(key, value);
        }
        finalize();
        return sc_;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError(source_ + ":" + std::to_string(line_no_) + ": " + msg);
    }

    void enter_section(const std::string& name) {
        static const std::set<std::string> known = {
            "robot", "geometry", "offsets", "gains", "lqi",
            "wing_model", "targets", "initial", "run"};
        if (!known.count(name)) fail("unknown section [" + name + "]");
        section_ = name;
    }

    double num(const std::string& value) const {
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0' || !std::isfinite(v))
            fail("'" + value + "' is not a finite number");
        return v;
    }

    bool boolean(const std::string& value) const {
        if (value == "true") return true;
        if (value == "false") return false;
        fail("'" + value + "' is not a boolean (use true or false)");
    }

    void mark(const std::string& slot) {
        if (!seen_.insert(slot).second)
            fail("duplicate value for '" + slot + "'");
    }

    void set_num(double& dst, const std::string& slot, const std::string& value) {
        mark(slot);
        dst = num(value);
    }

    // degrees: dst = (v * pi) / 180, matching how the defaults are written.
    void set_angle(double& dst, const std::string& slot, const std::string& value,
                   bool degrees) {
        mark(slot);
        const double v = num(value);
        dst = degrees ? v * M_PI / 180.0 : v;
    }

    void set_bool(bool& dst, const std::string& slot, const std::string& value) {
        mark(slot);
        dst = boolean(value);
    }

    void set_str(std::string& dst, const std::string& slot, const std::string& value) {
        mark(slot);
        dst = value;
    }

    bool triplet(const std::string& key, const std::string& base, Eigen::Vector3d& v,
                 const std::string& value) {
        for (int i = 0; i < 3; ++i) {
            if (key == base + "_" + kAxes[i]) {
                mark(section_ + "." + key);
                v(i) = num(value);
                return true;
            }
        }
        return false;
    }

    void dispatch(const std::string& key, const std::string& value) {
        if (section_ == "robot") robot_key(key, value);
        else if (section_ == "geometry") geometry_key(key, value);
        else if (section_ == "offsets") offsets_key(key, value);
        else if (section_ == "gains") gains_key(key, value);
        else if (section_ == "lqi") lqi_key(key, value);
        else if (section_ == "wing_model") wing_model_key(key, value);
        else if (section_ == "targets") targets_key(key, value);
        else if (section_ == "initial") initial_key(key, value);
        else if (section_ == "run") run_key(key, value);
    }

    [[noreturn]] void unknown(const std::string& key) const {
        fail("unknown key '" + key + "' in [" + section_ + "]");
    }

    void robot_key(const std::string& key, const std::string& value) {
        RobotParams& r = sc_.robot;
        if (key == "mass_kg") set_num(r.mass, "robot.mass_kg", value);
        else if (key == "inertia_xx_kgm2") set_num(r.inertia(0), "robot.inertia_xx_kgm2", value);
        else if (key == "inertia_yy_kgm2") set_num(r.inertia(1), "robot.inertia_yy_kgm2", value);
        else if (key == "inertia_zz_kgm2") set_num(r.inertia(2), "robot.inertia_zz_kgm2", value);
        else if (key == "time_lag_s") set_num(r.t_lag, "robot.time_lag_s", value);
        else if (key == "gravity_mps2") set_num(r.gravity, "robot.gravity_mps2", value);
        else unknown(key);
    }

    void geometry_key(const std::string& key, const std::string& value) {
        WingGeometry& g = sc_.geometry;
        if (key == "a_m") set_num(g.a, "geometry.a_m", value);
        else if (key == "b_m") set_num(g.b, "geometry.b_m", value);
        else if (key == "l_m") set_num(g.l, "geometry.l_m", value);
        else if (key == "beta_deg") set_angle(g.beta, "geometry.beta", value, true);
        else if (key == "beta_rad") set_angle(g.beta, "geometry.beta", value, false);
        else if (key == "gamma_deg") set_angle(g.gamma, "geometry.gamma", value, true);
        else if (key == "gamma_rad") set_angle(g.gamma, "geometry.gamma", value, false);
        else unknown(key);
    }

    void offsets_key(const std::string& key, const std::string& value) {
        if (key == "case") {
            mark("offsets.case");
            if (value == "none") sc_.offset_case = OffsetCase::none;
            else if (value == "case1") sc_.offset_case = OffsetCase::case1;
            else if (value == "case2") sc_.offset_case = OffsetCase::case2;
            else if (value == "custom") sc_.offset_case = OffsetCase::custom;
            else fail("offset case must be none, case1, case2, or custom (got '" + value + "')");
            return;
        }
        any_custom_offset_ = true;
        if (key == "d_beta_deg") { set_angle(d_beta_, "offsets.d_beta", value, true); return; }
        if (key == "d_beta_rad") { set_angle(d_beta_, "offsets.d_beta", value, false); return; }
        if (key == "d_gamma_deg") { set_angle(d_gamma_, "offsets.d_gamma", value, true); return; }
        if (key == "d_gamma_rad") { set_angle(d_gamma_, "offsets.d_gamma", value, false); return; }
        if (key == "d_l_m") { set_num(d_l_, "offsets.d_l_m", value); return; }
        for (int i = 0; i < 4; ++i) {
            const std::string n = std::to_string(i + 1);
            if (key == "d_fw_" + n + "_N") {
                mark("offsets.d_fw_" + n);
                d_fw_(i) = num(value);
                return;
            }
            if (key == "d_beta_" + n + "_deg" || key == "d_beta_" + n + "_rad") {
                mark("offsets.d_beta_" + n);
                d_beta_i_[static_cast<std::size_t>(i)] =
                    key.back() == 'g' ? num(value) * M_PI / 180.0 : num(value);
                return;
            }
            if (key == "d_gamma_" + n + "_deg" || key == "d_gamma_" + n + "_rad") {
                mark("offsets.d_gamma_" + n);
                d_gamma_i_[static_cast<std::size_t>(i)] =
                    key.back() == 'g' ? num(value) * M_PI / 180.0 : num(value);
                return;
            }
            if (key == "d_l_" + n + "_m") {
                mark("offsets.d_l_" + n);
                d_l_i_[static_cast<std::size_t>(i)] = num(value);
                return;
            }
        }
        unknown(key);
    }

    void gains_key(const std::string& key, const std::string& value) {
        ControlGains& g = sc_.gains;
        if (triplet(key, "k_eta", g.k_eta, value)) return;
        if (triplet(key, "lambda_omega", g.lambda_omega, value)) return;
        if (triplet(key, "k_omega", g.k_omega, value)) return;
        if (triplet(key, "gamma_omega", g.gamma_omega, value)) return;
        if (key == "h_x") set_num(g.h_x, "gains.h_x", value);
        else if (key == "h_y") set_num(g.h_y, "gains.h_y", value);
        else if (key == "lambda_z") set_num(g.lambda_z, "gains.lambda_z", value);
        else if (key == "k_z") set_num(g.k_z, "gains.k_z", value);
        else if (key == "gamma_z") set_num(g.gamma_z, "gains.gamma_z", value);
        else if (key == "attitude_target_clamp_rad")
            set_num(g.attitude_target_clamp, "gains.attitude_target_clamp_rad", value);
        else if (key == "derivative_filter_tau_s")
            set_num(g.derivative_filter_tau, "gains.derivative_filter_tau_s", value);
        else if (key == "yaw_feedforward_off")
            set_bool(g.yaw_feedforward_off, "gains.yaw_feedforward_off", value);
        else unknown(key);
    }

    void lqi_key(const std::string& key, const std::string& value) {
        LqiWeights& w = sc_.lqi_weights;
        const struct { const char* key; double* dst; } map[] = {
            {"max_velocity_mps", &w.max_velocity},
            {"max_tilt_rad", &w.max_tilt},
            {"max_yaw_rad", &w.max_yaw},
            {"max_rate_radps", &w.max_rate},
            {"max_force_lag_N", &w.max_force_lag},
            {"max_torque_lag_Nm", &w.max_torque_lag},
            {"max_velocity_integral_m", &w.max_velocity_integral},
            {"max_vertical_integral", &w.max_vertical_integral},
            {"max_yaw_integral_rads", &w.max_yaw_integral},
            {"max_altitude_m", &w.max_altitude},
            {"max_force_cmd_N", &w.max_force_cmd},
            {"max_torque_cmd_Nm", &w.max_torque_cmd},
            {"w_velocity", &w.w_velocity},
            {"w_vertical", &w.w_vertical},
            {"w_tilt", &w.w_tilt},
            {"w_yaw", &w.w_yaw},
            {"w_rate", &w.w_rate},
            {"w_force_lag", &w.w_force_lag},
            {"w_torque_lag", &w.w_torque_lag},
            {"w_velocity_integral", &w.w_velocity_integral},
            {"w_vertical_integral", &w.w_vertical_integral},
            {"w_yaw_integral", &w.w_yaw_integral},
            {"w_altitude", &w.w_altitude},
            {"w_force_cmd", &w.w_force_cmd},
            {"w_torque_cmd", &w.w_torque_cmd},
        };
        for (const auto& entry : map) {
            if (key == entry.key) {
                set_num(*entry.dst, "lqi." + key, value);
                return;
            }
        }
        unknown(key);
    }

    void wing_model_key(const std::string& key, const std::string& value) {
        WingModelConfig& wm = sc_.wing_model;
        if (key == "v_hover_V") set_num(wm.v_hover, "wing_model.v_hover_V", value);
        else if (key == "clamp_enabled") set_bool(wm.clamp_enabled, "wing_model.clamp_enabled", value);
        else if (key == "v_min_V") set_num(wm.v_min, "wing_model.v_min_V", value);
        else if (key == "v_max_V") set_num(wm.v_max, "wing_model.v_max_V", value);
        else unknown(key);
    }

    void targets_key(const std::string& key, const std::string& value) {
        Targets& t = sc_.targets;
        if (key == "v_x_mps") set_num(t.v_x, "targets.v_x_mps", value);
        else if (key == "v_y_mps") set_num(t.v_y, "targets.v_y_mps", value);
        else if (key == "v_z_mps") set_num(t.v_z, "targets.v_z_mps", value);
        else if (key == "z_m") set_num(t.z, "targets.z_m", value);
        else if (key == "psi_rad") set_angle(t.psi, "targets.psi", value, false);
        else if (key == "vertical_mode") {
            mark("targets.vertical_mode");
            if (value == "velocity") t.vertical_mode = VerticalMode::velocity;
            else if (value == "position") t.vertical_mode = VerticalMode::position;
            else fail("vertical_mode must be velocity or position (got '" + value + "')");
        } else unknown(key);
    }

    void initial_key(const std::string& key, const std::string& value) {
        SimState& s = sc_.initial_state;
        AdaptiveEstimates& e = sc_.initial_estimates;
        if (key == "x_m") set_num(s.pos(0), "initial.x_m", value);
        else if (key == "y_m") set_num(s.pos(1), "initial.y_m", value);
        else if (key == "z_m") set_num(s.pos(2), "initial.z_m", value);
        else if (key == "vx_mps") set_num(s.vel(0), "initial.vx_mps", value);
        else if (key == "vy_mps") set_num(s.vel(1), "initial.vy_mps", value);
        else if (key == "vz_mps") set_num(s.vel(2), "initial.vz_mps", value);
        else if (key == "roll_rad") set_angle(s.att.phi, "initial.roll", value, false);
        else if (key == "pitch_rad") set_angle(s.att.theta, "initial.pitch", value, false);
        else if (key == "yaw_rad") set_angle(s.att.psi, "initial.yaw", value, false);
        else if (key == "wx_radps") set_num(s.omega.x, "initial.wx_radps", value);
        else if (key == "wy_radps") set_num(s.omega.y, "initial.wy_radps", value);
        else if (key == "wz_radps") set_num(s.omega.z, "initial.wz_radps", value);
        else if (key == "tau_o_hat_x_Nm") set_num(e.tau_o_hat(0), "initial.tau_o_hat_x_Nm", value);
        else if (key == "tau_o_hat_y_Nm") set_num(e.tau_o_hat(1), "initial.tau_o_hat_y_Nm", value);
        else if (key == "tau_o_hat_z_Nm") set_num(e.tau_o_hat(2), "initial.tau_o_hat_z_Nm", value);
        else if (key == "f_oz_hat_N") set_num(e.f_oz_hat, "initial.f_oz_hat_N", value);
        else if (key == "estimates_file") set_str(sc_.estimates_file, "initial.estimates_file", value);
        else unknown(key);
    }

    void run_key(const std::string& key, const std::string& value) {
        if (key == "name") set_str(sc_.name, "run.name", value);
        else if (key == "duration_s") set_num(sc_.duration, "run.duration_s", value);
        else if (key == "control_rate_hz") set_num(sc_.control_rate, "run.control_rate_hz", value);
        else if (key == "dt_plant_s") set_num(sc_.dt_plant, "run.dt_plant_s", value);
        else if (key == "controller") {
            mark("run.controller");
            if (value == "adaptive") sc_.controller = ControllerKind::adaptive;
            else if (value == "lqi") sc_.controller = ControllerKind::lqi;
            else fail("controller must be adaptive or lqi (got '" + value + "')");
        } else if (key == "seed") {
            mark("run.seed");
            const double v = num(value);
            if (v < 0.0 || v != std::floor(v))
                fail("seed must be a nonnegative integer (got '" + value + "')");
            sc_.seed = static_cast<unsigned long>(v);
        } else unknown(key);
    }

    void finalize() {
        line_no_ = 0;  // errors below are file-level
        switch (sc_.offset_case) {
            case OffsetCase::none:
            case OffsetCase::case1:
            case OffsetCase::case2:
                if (any_custom_offset_)
                    throw ConfigError(source_ +
                                      ": [offsets] d_* keys require 'case = custom'");
                break;
            case OffsetCase::custom:
                break;
        }
        if (sc_.offset_case == OffsetCase::case1) sc_.offsets = OffsetSpec::case1();
        else if (sc_.offset_case == OffsetCase::case2)
            sc_.offsets = OffsetSpec::case2(sc_.robot.mass, sc_.robot.gravity);
        else if (sc_.offset_case == OffsetCase::custom) {
            sc_.offsets.d_beta = d_beta_;
            sc_.offsets.d_gamma = d_gamma_;
            sc_.offsets.d_l = d_l_;
            sc_.offsets.d_fw = d_fw_;
            sc_.offsets.d_beta_per_wing = collect_per_wing(d_beta_i_, "d_beta");
            sc_.offsets.d_gamma_per_wing = collect_per_wing(d_gamma_i_, "d_gamma");
            sc_.offsets.d_l_per_wing = collect_per_wing(d_l_i_, "d_l");
        }
    }

    std::optional<std::array<double, 4>> collect_per_wing(
        const std::array<std::optional<double>, 4>& src, const std::string& base) const {
        int given = 0;
        for (const auto& v : src)
            if (v) ++given;
        if (given == 0) return std::nullopt;
        if (given < 4)
            throw ConfigError(source_ + ": per-wing " + base +
                              " overrides require all four wings (got " +
                              std::to_string(given) + ")");
        return std::array<double, 4>{*src[0], *src[1], *src[2], *src[3]};
    }

    std::istream& in_;
    std::string source_;
    int line_no_{0};
    std::string section_;
    Scenario sc_;
    std::set<std::string> seen_;

    bool any_custom_offset_{false};
    double d_beta_{0.0}, d_gamma_{0.0}, d_l_{0.0};
    Eigen::Vector4d d_fw_{Eigen::Vector4d::Zero()};
    std::array<std::optional<double>, 4> d_beta_i_, d_gamma_i_, d_l_i_;
};

}  // namespace

int Scenario::steps_per_tick() const {
    return static_cast<int>(std::lround(dt_ctrl() / dt_plant));
}

void Scenario::validate() const {
    std::vector<std::string> problems;
    auto check = [&](bool ok, const std::string& msg) {
        if (!ok) problems.push_back(msg);
    };

    check(duration >= 0.0, "duration_s must be >= 0");
    check(control_rate > 0.0, "control_rate_hz must be positive");
    check(dt_plant > 0.0, "dt_plant_s must be positive");
    if (control_rate > 0.0 && dt_plant > 0.0) {
        const double ratio = dt_ctrl() / dt_plant;
        const double k = std::round(ratio);
        if (k < 1.0 || std::abs(ratio - k) > 1e-6 * std::max(1.0, k))
            problems.push_back(
                "the control period 1/control_rate_hz must be an integer multiple of "
                "dt_plant_s (got ratio " + num_str(ratio) +
                "); adjust control_rate_hz or dt_plant_s");
    }

    check(robot.mass > 0.0, "mass_kg must be positive");
    check(robot.inertia(0) > 0.0 && robot.inertia(1) > 0.0 && robot.inertia(2) > 0.0,
          "inertia diagonal entries must all be positive");
    check(robot.t_lag > 0.0, "time_lag_s must be positive");
    check(robot.gravity > 0.0, "gravity_mps2 must be positive");

    if (!(std::abs(geometry.beta) < M_PI / 2.0))
        problems.push_back(
            "wing tilt beta is " + num_str(geometry.beta) +
            " rad; |beta| must be below 90 deg or the wings produce no usable "
            "vertical force (and at 0 deg no yaw torque), so keep it strictly "
            "inside (-90, 90) deg");

    try {
        gains.validate();
    } catch (const ConfigError& e) {
        problems.emplace_back(e.what());
    }

    check(wing_model.v_hover > 0.0, "v_hover_V must be positive");
    if (wing_model.clamp_enabled) {
        check(wing_model.v_min < wing_model.v_max,
              "v_min_V must be below v_max_V when the amplitude clamp is enabled");
        check(wing_model.v_min <= wing_model.v_hover &&
                  wing_model.v_hover <= wing_model.v_max,
              "v_hover_V must lie inside [v_min_V, v_max_V] when the amplitude "
              "clamp is enabled, otherwise hover is unreachable");
    }

    {
        const LqiWeights& w = lqi_weights;
        const struct { double v; const char* name; } entries[] = {
            {w.max_velocity, "max_velocity_mps"},
            {w.max_tilt, "max_tilt_rad"},
            {w.max_yaw, "max_yaw_rad"},
            {w.max_rate, "max_rate_radps"},
            {w.max_force_lag, "max_force_lag_N"},
            {w.max_torque_lag, "max_torque_lag_Nm"},
            {w.max_velocity_integral, "max_velocity_integral_m"},
            {w.max_vertical_integral, "max_vertical_integral"},
            {w.max_yaw_integral, "max_yaw_integral_rads"},
            {w.max_altitude, "max_altitude_m"},
            {w.max_force_cmd, "max_force_cmd_N"},
            {w.max_torque_cmd, "max_torque_cmd_Nm"},
            {w.w_velocity, "w_velocity"},
            {w.w_vertical, "w_vertical"},
            {w.w_tilt, "w_tilt"},
            {w.w_yaw, "w_yaw"},
            {w.w_rate, "w_rate"},
            {w.w_force_lag, "w_force_lag"},
            {w.w_torque_lag, "w_torque_lag"},
            {w.w_velocity_integral, "w_velocity_integral"},
            {w.w_vertical_integral, "w_vertical_integral"},
            {w.w_yaw_integral, "w_yaw_integral"},
            {w.w_altitude, "w_altitude"},
            {w.w_force_cmd, "w_force_cmd"},
            {w.w_torque_cmd, "w_torque_cmd"},
        };
        for (const auto& entry : entries)
            check(entry.v > 0.0, std::string("[lqi] ") + entry.name + " must be positive");
    }

    if (!problems.empty()) {
        std::string msg = "invalid scenario '" + name + "':";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw ConfigError(msg);
    }
}

Scenario parse_scenario(std::istream& in, const std::string& source_name) {
    return IniParser(in, source_name).run();
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    return parse_scenario(in, path);
}

std::string scenario_to_ini(const Scenario& sc) {
    std::ostringstream out;
    auto kv = [&](const char* key, double v) { out << key << " = " << num_str(v) << "\n"; };
    auto kb = [&](const char* key, bool v) { out << key << " = " << (v ? "true" : "false") << "\n"; };

    out << "[run]\n";
    out << "name = " << sc.name << "\n";
    out << "controller = " << (sc.controller == ControllerKind::lqi ? "lqi" : "adaptive") << "\n";
    kv("duration_s", sc.duration);
    kv("control_rate_hz", sc.control_rate);
    kv("dt_plant_s", sc.dt_plant);
    out << "seed = " << sc.seed << "\n";

    out << "\n[robot]\n";
    kv("mass_kg", sc.robot.mass);
    kv("inertia_xx_kgm2", sc.robot.inertia(0));
    kv("inertia_yy_kgm2", sc.robot.inertia(1));
    kv("inertia_zz_kgm2", sc.robot.inertia(2));
    kv("time_lag_s", sc.robot.t_lag);
    kv("gravity_mps2", sc.robot.gravity);

    out << "\n[geometry]\n";
    kv("a_m", sc.geometry.a);
    kv("b_m", sc.geometry.b);
    kv("beta_rad", sc.geometry.beta);
    kv("gamma_rad", sc.geometry.gamma);
    kv("l_m", sc.geometry.l);

    out << "\n[offsets]\n";
    switch (sc.offset_case) {
        case OffsetCase::none: out << "case = none\n"; break;
        case OffsetCase::case1: out << "case = case1\n"; break;
        case OffsetCase::case2: out << "case = case2\n"; break;
        case OffsetCase::custom: {
            out << "case = custom\n";
            const OffsetSpec& o = sc.offsets;
            kv("d_beta_rad", o.d_beta);
            kv("d_gamma_rad", o.d_gamma);
            kv("d_l_m", o.d_l);
            for (int i = 0; i < 4; ++i) {
                const std::string key = "d_fw_" + std::to_string(i + 1) + "_N";
                kv(key.c_str(), o.d_fw(i));
            }
            auto per_wing = [&](const char* base,
                                const std::optional<std::array<double, 4>>& arr,
                                const char* unit) {
                if (!arr) return;
                for (int i = 0; i < 4; ++i) {
                    const std::string key =
                        std::string(base) + "_" + std::to_string(i + 1) + "_" + unit;
                    kv(key.c_str(), (*arr)[static_cast<std::size_t>(i)]);
                }
            };
            per_wing("d_beta", o.d_beta_per_wing, "rad");
            per_wing("d_gamma", o.d_gamma_per_wing, "rad");
            per_wing("d_l", o.d_l_per_wing, "m");
            break;
        }
    }

    out << "\n[gains]\n";
    kv("h_x", sc.gains.h_x);
    kv("h_y", sc.gains.h_y);
    for (int i = 0; i < 3; ++i)
        kv(("k_eta_" + std::string(kAxes[i])).c_str(), sc.gains.k_eta(i));
    for (int i = 0; i < 3; ++i)
        kv(("lambda_omega_" + std::string(kAxes[i])).c_str(), sc.gains.lambda_omega(i));
    for (int i = 0; i < 3; ++i)
        kv(("k_omega_" + std::string(kAxes[i])).c_str(), sc.gains.k_omega(i));
    for (int i = 0; i < 3; ++i)
        kv(("gamma_omega_" + std::string(kAxes[i])).c_str(), sc.gains.gamma_omega(i));
    kv("lambda_z", sc.gains.lambda_z);
    kv("k_z", sc.gains.k_z);
    kv("gamma_z", sc.gains.gamma_z);
    kv("attitude_target_clamp_rad", sc.gains.attitude_target_clamp);
    kv("derivative_filter_tau_s", sc.gains.derivative_filter_tau);
    kb("yaw_feedforward_off", sc.gains.yaw_feedforward_off);

    out << "\n[lqi]\n";
    const LqiWeights& w = sc.lqi_weights;
    kv("max_velocity_mps", w.max_velocity);
    kv("max_tilt_rad", w.max_tilt);
    kv("max_yaw_rad", w.max_yaw);
    kv("max_rate_radps", w.max_rate);
    kv("max_force_lag_N", w.max_force_lag);
    kv("max_torque_lag_Nm", w.max_torque_lag);
    kv("max_velocity_integral_m", w.max_velocity_integral);
    kv("max_vertical_integral", w.max_vertical_integral);
    kv("max_yaw_integral_rads", w.max_yaw_integral);
    kv("max_altitude_m", w.max_altitude);
    kv("max_force_cmd_N", w.max_force_cmd);
    kv("max_torque_cmd_Nm", w.max_torque_cmd);
    kv("w_velocity", w.w_velocity);
    kv("w_vertical", w.w_vertical);
    kv("w_tilt", w.w_tilt);
    kv("w_yaw", w.w_yaw);
    kv("w_rate", w.w_rate);
    kv("w_force_lag", w.w_force_lag);
    kv("w_torque_lag", w.w_torque_lag);
    kv("w_velocity_integral", w.w_velocity_integral);
    kv("w_vertical_integral", w.w_vertical_integral);
    kv("w_yaw_integral", w.w_yaw_integral);
    kv("w_altitude", w.w_altitude);
    kv("w_force_cmd", w.w_force_cmd);
    kv("w_torque_cmd", w.w_torque_cmd);

    out << "\n[wing_model]\n";
    kv("v_hover_V", sc.wing_model.v_hover);
    kb("clamp_enabled", sc.wing_model.clamp_enabled);
    kv("v_min_V", sc.wing_model.v_min);
    kv("v_max_V", sc.wing_model.v_max);

    out << "\n[targets]\n";
    kv("v_x_mps", sc.targets.v_x);
    kv("v_y_mps", sc.targets.v_y);
    out << "vertical_mode = "
        << (sc.targets.vertical_mode == VerticalMode::position ? "position" : "velocity")
        << "\n";
    kv("v_z_mps", sc.targets.v_z);
    kv("z_m", sc.targets.z);
    kv("psi_rad", sc.targets.psi);

    out << "\n[initial]\n";
    kv("x_m", sc.initial_state.pos(0));
    kv("y_m", sc.initial_state.pos(1));
    kv("z_m", sc.initial_state.pos(2));
    kv("vx_mps", sc.initial_state.vel(0));
    kv("vy_mps", sc.initial_state.vel(1));
    kv("vz_mps", sc.initial_state.vel(2));
    kv("roll_rad", sc.initial_state.att.phi);
    kv("pitch_rad", sc.initial_state.att.theta);
    kv("yaw_rad", sc.initial_state.att.psi);
    kv("wx_radps", sc.initial_state.omega.x);
    kv("wy_radps", sc.initial_state.omega.y);
    kv("wz_radps", sc.initial_state.omega.z);
    kv("tau_o_hat_x_Nm", sc.initial_estimates.tau_o_hat(0));
    kv("tau_o_hat_y_Nm", sc.initial_estimates.tau_o_hat(1));
    kv("tau_o_hat_z_Nm", sc.initial_estimates.tau_o_hat(2));
    kv("f_oz_hat_N", sc.initial_estimates.f_oz_hat);
    if (!sc.estimates_file.empty()) out << "estimates_file = " << sc.estimates_file << "\n";

    return out.str();
}

const std::vector<std::string>& builtin_scenario_names() {
    static const std::vector<std::string> names = {
        "no_offset", "case1", "case2", "case3", "altitude_hold_experiment"};
    return names;
}

Scenario builtin_scenario(const std::string& name) {
    Scenario sc;
    sc.name = name;
    if (name == "no_offset" || name == "case1" || name == "case2" || name == "case3") {
        sc.targets.v_x = 0.5;
        sc.targets.v_y = 0.5;
        sc.targets.v_z = 0.5;
        sc.targets.psi = 1.0;
        if (name == "case1") {
            sc.offset_case = OffsetCase::case1;
            sc.offsets = OffsetSpec::case1();
        } else if (name == "case2" || name == "case3") {
            sc.offset_case = OffsetCase::case2;
            sc.offsets = OffsetSpec::case2(sc.robot.mass, sc.robot.gravity);
        }
        return sc;
    }
    if (name == "altitude_hold_experiment") {
        sc.robot.mass = 1.52e-3;
        sc.targets.vertical_mode = VerticalMode::position;
        sc.targets.z = 0.05;
        sc.gains.yaw_feedforward_off = true;
        return sc;
    }
    throw ConfigError("unknown builtin scenario '" + name + "'; available: no_offset, case1, case2, case3, altitude_hold_experiment");
}

Scenario resolve_scenario(const std::string& name_or_path) {
    for (const auto& n : builtin_scenario_names())
        if (n == name_or_path) return builtin_scenario(n);
    return load_scenario(name_or_path);
}

}  // namespace fwmav
