#include "fwmav/simulation.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "fwmav/controllers.hpp"
#include "fwmav/errors.hpp"
#include "fwmav/geometry.hpp"
#include "fwmav/lqi.hpp"
#include "fwmav/plant.hpp"

namespace fwmav {

namespace {

const char* controller_tag(ControllerKind kind) {
    return kind == ControllerKind::lqi ? "lqi" : "adaptive";
}

TraceRecord make_record(double t, const SimState& state, const ControlOutput& out,
                        const Plant& plant) {
    TraceRecord rec;
    rec.t = t;
    rec.pos = state.pos;
    rec.vel = state.vel;
    rec.vel_body = rotation_matrix(state.att).transpose() * state.vel;
    rec.att = state.att;
    rec.omega = state.omega.vec();
    rec.s_omega = out.diag.s_omega;
    rec.s_z = out.diag.s_z;
    rec.tau_o_hat = out.diag.tau_o_hat;
    rec.f_oz_hat = out.diag.f_oz_hat;
    rec.wing_force_demand = out.diag.wing_force_demand;
    rec.amplitude_demand = out.diag.amplitude_demand;
    rec.offset = plant.exact_offset_wrench(state);
    return rec;
}

std::string format_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

RunResult run_scenario(const Scenario& sc) {
    sc.validate();
    const auto start = std::chrono::steady_clock::now();

    RunResult result;
    result.name = sc.name;
    result.controller = sc.controller;

    const double dt_ctrl = sc.dt_ctrl();
    const int substeps = sc.steps_per_tick();
    const double dt_sub = dt_ctrl / substeps;

    try {
        const MixingMatrix nominal = build_mixing_matrix(sc.geometry);
        const Plant plant(sc.robot, sc.geometry, sc.offsets);
        WingForceModel model = WingForceModel::from_hover_point(
            sc.robot.mass, sc.robot.gravity, sc.geometry.beta, sc.wing_model.v_hover);
        model.clamp_enabled = sc.wing_model.clamp_enabled;
        model.v_min = sc.wing_model.v_min;
        model.v_max = sc.wing_model.v_max;

        SimState state = sc.initial_state;
        state.f_z_lag = sc.robot.mass * sc.robot.gravity;
        state.tau_lag.setZero();

        std::optional<AdaptiveController> adaptive;
        std::optional<LqiController> lqi;
        if (sc.controller == ControllerKind::adaptive) {
            adaptive.emplace(sc.gains, sc.robot, nominal, model, sc.targets, dt_ctrl);
            AdaptiveEstimates init = sc.initial_estimates;
            if (!sc.estimates_file.empty()) init = read_estimates(sc.estimates_file);
            adaptive->set_estimates(init);
        } else {
            const LqiGains gains =
                lqi_synthesize(sc.robot, sc.lqi_weights, sc.targets.vertical_mode);
            lqi.emplace(gains, sc.robot, nominal, model, sc.targets, dt_ctrl);
        }

        if (sc.duration > 0.0) {
            const int ticks =
                std::max(1, static_cast<int>(std::lround(sc.duration / dt_ctrl)));
            result.trace.reserve(static_cast<std::size_t>(ticks) + 1);
            for (int k = 0; k <= ticks; ++k) {
                const double t = k * dt_ctrl;
                const ControlOutput out = adaptive ? adaptive->step(state) : lqi->step(state);
                result.trace.push_back(make_record(t, state, out, plant));
                if (k == ticks) break;
                for (int s = 0; s < substeps; ++s)
                    state = plant.step(state, out.demand, dt_sub);
            }
        }
        if (adaptive) result.final_estimates = adaptive->estimates();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        result.failure = e.what();
    }

    if (!result.failure) result.metrics = compute_step_metrics(result.trace, sc.targets);
    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

Case3Result run_case3(const Scenario& sc) {
    Case3Result result;
    result.cold = run_scenario(sc);
    if (result.cold.failure) {
        result.hot = result.cold;
        result.hot.trace.clear();
        return result;
    }
    Scenario hot = sc;
    hot.initial_estimates = result.cold.final_estimates;
    hot.estimates_file.clear();
    result.hot = run_scenario(hot);
    return result;
}

CompareResult compare_controllers(const Scenario& sc) {
    CompareResult result;
    Scenario each = sc;
    each.controller = ControllerKind::adaptive;
    result.adaptive = run_scenario(each);
    each.controller = ControllerKind::lqi;
    result.lqi = run_scenario(each);
    return result;
}

AdaptiveEstimates read_estimates(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open estimates file: " + path);

    std::map<std::string, double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        const auto strip = [](const std::string& s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": expected 'name = value'");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0' || !std::isfinite(v))
            throw ConfigError(path + ":" + std::to_string(line_no) + ": '" + value +
                              "' is not a finite number");
        if (!values.emplace(key, v).second)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": duplicate '" +
                              key + "'");
    }

    static const char* const required[] = {"tau_o_hat_x", "tau_o_hat_y", "tau_o_hat_z",
                                           "f_oz_hat"};
    for (const auto& [key, value] : values) {
        (void)value;
        bool known = false;
        for (const char* name : required) known = known || key == name;
        if (!known) throw ConfigError(path + ": unknown entry '" + key + "'");
    }
    AdaptiveEstimates est;
    for (int i = 0; i < 3; ++i) {
        const auto it = values.find(required[i]);
        if (it == values.end())
            throw ConfigError(path + ": missing entry '" + std::string(required[i]) + "'");
        est.tau_o_hat(i) = it->second;
    }
    const auto it = values.find("f_oz_hat");
    if (it == values.end()) throw ConfigError(path + ": missing entry 'f_oz_hat'");
    est.f_oz_hat = it->second;
    return est;
}

void write_estimates(const std::string& path, const AdaptiveEstimates& estimates) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open estimates file for writing: " + path);
    char buf[64];
    const char* names[] = {"tau_o_hat_x", "tau_o_hat_y", "tau_o_hat_z"};
    for (int i = 0; i < 3; ++i) {
        std::snprintf(buf, sizeof buf, "%s = %.17g\n", names[i], estimates.tau_o_hat(i));
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "f_oz_hat = %.17g\n", estimates.f_oz_hat);
    out << buf;
    out.flush();
    if (!out) throw Error("failed writing estimates file: " + path);
}

namespace {

struct ChannelRow {
    const char* name;
    const ChannelMetrics* m;
};

std::array<ChannelRow, 4> channel_rows(const ResponseMetrics& metrics) {
    return {{{"v_x", &metrics.v_x},
             {"v_y", &metrics.v_y},
             {"v_z", &metrics.v_z},
             {"psi", &metrics.psi}}};
}

std::string settling_str(const ChannelMetrics& m) {
    if (!m.defined) return "undefined";
    if (!m.settled) return "never";
    return format_num(m.settling_time);
}

std::string metric_str(const ChannelMetrics& m, double value) {
    return m.defined ? format_num(value) : "undefined";
}

std::string flag_str(const ChannelMetrics& m, bool value) {
    if (!m.defined) return "undefined";
    return value ? "true" : "false";
}

}  // namespace

std::string metrics_report_text(const ResponseMetrics& metrics) {
    std::ostringstream out;
    char buf[96];
    for (const auto& row : channel_rows(metrics)) {
        const ChannelMetrics& m = *row.m;
        const struct { const char* metric; std::string value; } lines[] = {
            {"settling_time_s", settling_str(m)},
            {"overshoot_pct", metric_str(m, m.overshoot_pct)},
            {"reverse_response", flag_str(m, m.reverse_response)},
            {"steady_state_error_pct", metric_str(m, m.steady_state_error_pct)},
        };
        for (const auto& l : lines) {
            std::snprintf(buf, sizeof buf, "%-4s %-24s %s\n", row.name, l.metric,
                          l.value.c_str());
            out << buf;
        }
    }
    return out.str();
}

std::string metrics_report_json(const ResponseMetrics& metrics) {
    nlohmann::json j;
    for (const auto& row : channel_rows(metrics)) {
        const ChannelMetrics& m = *row.m;
        if (!m.defined) {
            j[row.name] = nullptr;
            continue;
        }
        nlohmann::json c;
        c["settled"] = m.settled;
        if (m.settled) c["settling_time_s"] = m.settling_time;
        else c["settling_time_s"] = nullptr;
        c["overshoot_pct"] = m.overshoot_pct;
        c["reverse_response"] = m.reverse_response;
        c["steady_state_error_pct"] = m.steady_state_error_pct;
        j[row.name] = c;
    }
    return j.dump(2) + "\n";
}

std::string compare_report_text(const CompareResult& result) {
    std::ostringstream out;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-4s %-24s %-14s %-14s\n", "chan", "metric",
                  "adaptive", "lqi");
    out << buf;
    const auto a_rows = channel_rows(result.adaptive.metrics);
    const auto l_rows = channel_rows(result.lqi.metrics);
    for (std::size_t i = 0; i < a_rows.size(); ++i) {
        const ChannelMetrics& a = *a_rows[i].m;
        const ChannelMetrics& l = *l_rows[i].m;
        const struct { const char* metric; std::string av, lv; } lines[] = {
            {"settling_time_s", settling_str(a), settling_str(l)},
            {"overshoot_pct", metric_str(a, a.overshoot_pct), metric_str(l, l.overshoot_pct)},
            {"reverse_response", flag_str(a, a.reverse_response), flag_str(l, l.reverse_response)},
            {"steady_state_error_pct", metric_str(a, a.steady_state_error_pct),
             metric_str(l, l.steady_state_error_pct)},
        };
        for (const auto& line : lines) {
            std::snprintf(buf, sizeof buf, "%-4s %-24s %-14s %-14s\n", a_rows[i].name,
                          line.metric, line.av.c_str(), line.lv.c_str());
            out << buf;
        }
    }
    if (result.adaptive.failure)
        out << "adaptive run failed: " << *result.adaptive.failure << "\n";
    if (result.lqi.failure) out << "lqi run failed: " << *result.lqi.failure << "\n";
    return out.str();
}

namespace {

std::string plot_script(const std::string& trace_file) {
    std::ostringstream out;
    out << "#!/usr/bin/env python3\n"
           "\"\"\"Velocity and attitude panels from a trace CSV.\"\"\"\n"
           "import csv\n"
           "import matplotlib.pyplot as plt\n"
           "\n"
           "rows = []\n"
           "with open(\"" << trace_file << "\") as f:\n"
           "    for row in csv.DictReader(f):\n"
           "        rows.append({k: float(v) for k, v in row.items()})\n"
           "\n"
           "t = [r[\"t_s\"] for r in rows]\n"
           "fig, (ax_v, ax_a) = plt.subplots(2, 1, sharex=True, figsize=(8, 6))\n"
           "for key, label in [(\"vel_body_x_mps\", \"v_x\"),\n"
           "                   (\"vel_body_y_mps\", \"v_y\"),\n"
           "                   (\"vel_body_z_mps\", \"v_z\")]:\n"
           "    ax_v.plot(t, [r[key] for r in rows], label=label)\n"
           "ax_v.set_ylabel(\"body velocity (m/s)\")\n"
           "ax_v.legend()\n"
           "ax_v.grid(True)\n"
           "for key, label in [(\"att_roll_rad\", \"roll\"),\n"
           "                   (\"att_pitch_rad\", \"pitch\"),\n"
           "                   (\"att_yaw_rad\", \"yaw\")]:\n"
           "    ax_a.plot(t, [r[key] for r in rows], label=label)\n"
           "ax_a.set_xlabel(\"time (s)\")\n"
           "ax_a.set_ylabel(\"attitude (rad)\")\n"
           "ax_a.legend()\n"
           "ax_a.grid(True)\n"
           "fig.tight_layout()\n"
           "plt.show()\n";
    return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file for writing: " + path.string());
    out << content;
    out.flush();
    if (!out) throw Error("failed writing output file: " + path.string());
}

}  // namespace

void emit_outputs(const std::string& out_dir, const RunResult& result,
                  const EmitOptions& options) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error("cannot create output directory " + out_dir + ": " + ec.message());

    const std::string base = result.name + "_" + controller_tag(result.controller);
    const fs::path dir(out_dir);

    write_trace_csv((dir / (base + "_trace.csv")).string(), result.trace);
    write_text_file(dir / (base + "_metrics.txt"), metrics_report_text(result.metrics));
    write_text_file(dir / (base + "_metrics.json"), metrics_report_json(result.metrics));
    if (result.controller == ControllerKind::adaptive)
        write_estimates((dir / (base + "_estimates.txt")).string(), result.final_estimates);
    if (options.plot_script)
        write_text_file(dir / (base + "_plot.py"), plot_script(base + "_trace.csv"));
}

}  // namespace fwmav
