#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fwmav/errors.hpp"
#include "fwmav/metrics.hpp"
#include "fwmav/scenario.hpp"
#include "fwmav/simulation.hpp"

namespace {

struct RunOptions {
    std::string scenario;
    std::string controller;
    std::string out_dir{"out"};
    std::string estimates_in;
    std::string estimates_out;
    bool plot{false};
};

fwmav::ControllerKind parse_controller(const std::string& name) {
    if (name == "adaptive") return fwmav::ControllerKind::adaptive;
    if (name == "lqi") return fwmav::ControllerKind::lqi;
    throw fwmav::ConfigError("controller must be adaptive or lqi (got '" + name + "')");
}

int report_failure(const fwmav::RunResult& result) {
    if (!result.failure) return 0;
    std::cerr << result.name << " (" << (result.controller == fwmav::ControllerKind::lqi
                                             ? "lqi" : "adaptive")
              << ") failed: " << *result.failure << "; partial trace written\n";
    return 3;
}

int cmd_run(const RunOptions& opt) {
    fwmav::Scenario sc = fwmav::resolve_scenario(opt.scenario);
    if (!opt.controller.empty()) sc.controller = parse_controller(opt.controller);
    if (!opt.estimates_in.empty()) {
        if (sc.controller != fwmav::ControllerKind::adaptive)
            throw fwmav::ConfigError("--estimates-in requires the adaptive controller");
        sc.estimates_file = opt.estimates_in;
    }
    if (!opt.estimates_out.empty() && sc.controller != fwmav::ControllerKind::adaptive)
        throw fwmav::ConfigError("--estimates-out requires the adaptive controller");

    const fwmav::RunResult result = fwmav::run_scenario(sc);
    fwmav::emit_outputs(opt.out_dir, result, {opt.plot});
    if (!opt.estimates_out.empty())
        fwmav::write_estimates(opt.estimates_out, result.final_estimates);

    std::cout << "scenario " << result.name << ", "
              << (result.controller == fwmav::ControllerKind::lqi ? "lqi" : "adaptive")
              << " controller, " << result.trace.size() << " records, "
              << result.wall_time_s << " s wall clock\n";
    if (!result.failure) std::cout << fwmav::metrics_report_text(result.metrics);
    return report_failure(result);
}

int cmd_compare(const std::string& scenario, const std::string& out_dir, bool plot) {
    const fwmav::Scenario sc = fwmav::resolve_scenario(scenario);
    const fwmav::CompareResult result = fwmav::compare_controllers(sc);
    fwmav::emit_outputs(out_dir, result.adaptive, {plot});
    fwmav::emit_outputs(out_dir, result.lqi, {plot});
    const std::string report = fwmav::compare_report_text(result);
    std::cout << report;

    namespace fs = std::filesystem;
    std::ofstream out(fs::path(out_dir) / (sc.name + "_compare.txt"));
    out << report;

    const int a = report_failure(result.adaptive);
    const int l = report_failure(result.lqi);
    return a != 0 ? a : l;
}

int cmd_case3(const std::string& out_dir, bool plot) {
    const fwmav::Scenario sc = fwmav::builtin_scenario("case2");
    fwmav::Case3Result result = fwmav::run_case3(sc);
    result.hot.name = "case3";
    fwmav::emit_outputs(out_dir, result.cold, {plot});
    fwmav::emit_outputs(out_dir, result.hot, {plot});

    std::cout << "case2 (cold start):\n"
              << fwmav::metrics_report_text(result.cold.metrics)
              << "case3 (hot start from adapted estimates):\n"
              << fwmav::metrics_report_text(result.hot.metrics);
    const int c = report_failure(result.cold);
    const int h = report_failure(result.hot);
    return c != 0 ? c : h;
}

int cmd_validate(const std::string& scenario, bool dump) {
    const fwmav::Scenario sc = fwmav::resolve_scenario(scenario);
    sc.validate();
    std::cout << "scenario '" << sc.name << "' is valid\n";
    if (dump) std::cout << fwmav::scenario_to_ini(sc);
    return 0;
}

int cmd_metrics(const std::string& trace_path, const std::string& scenario) {
    const std::vector<fwmav::TraceRecord> trace = fwmav::read_trace_csv(trace_path);

    fwmav::Targets targets;
    if (!scenario.empty()) {
        targets = fwmav::resolve_scenario(scenario).targets;
    } else if (!trace.empty()) {
        // Without a scenario the targets are taken as the trace's tail means.
        const std::size_t n = trace.size();
        const std::size_t tail = std::max<std::size_t>(1, n / 20);
        double vx = 0.0, vy = 0.0, vz = 0.0, psi = 0.0;
        for (std::size_t i = n - tail; i < n; ++i) {
            vx += trace[i].vel_body(0);
            vy += trace[i].vel_body(1);
            vz += trace[i].vel_body(2);
            psi += trace[i].att.psi;
        }
        targets.v_x = vx / tail;
        targets.v_y = vy / tail;
        targets.v_z = vz / tail;
        targets.psi = psi / tail;
    }

    std::cout << fwmav::metrics_report_text(fwmav::compute_step_metrics(trace, targets));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"six-degree-of-freedom flapping-wing robot flight simulator"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "simulate one scenario");
    run->add_option("--scenario", run_opt.scenario, "scenario file or builtin name")
        ->required();
    run->add_option("--controller", run_opt.controller,
                    "override the scenario's controller (adaptive|lqi)");
    run->add_option("--out", run_opt.out_dir, "output directory (default out)");
    run->add_option("--estimates-in", run_opt.estimates_in,
                    "hot-start offset estimates file");
    run->add_option("--estimates-out", run_opt.estimates_out,
                    "where to persist the final offset estimates");
    run->add_flag("--plot", run_opt.plot, "also emit a matplotlib plot script");

    std::string cmp_scenario, cmp_out{"out"};
    bool cmp_plot = false;
    auto* compare = app.add_subcommand(
        "compare", "run a scenario under both controllers and tabulate metrics");
    compare->add_option("--scenario", cmp_scenario, "scenario file or builtin name")
        ->required();
    compare->add_option("--out", cmp_out, "output directory (default out)");
    compare->add_flag("--plot", cmp_plot, "also emit matplotlib plot scripts");

    std::string c3_out{"out"};
    bool c3_plot = false;
    auto* case3 = app.add_subcommand(
        "case3", "wing-force offset run, then rerun hot-started from the adapted "
                 "estimates");
    case3->add_option("--out", c3_out, "output directory (default out)");
    case3->add_flag("--plot", c3_plot, "also emit matplotlib plot scripts");

    std::string val_scenario;
    bool val_dump = false;
    auto* validate = app.add_subcommand("validate", "check a scenario file");
    validate->add_option("--scenario", val_scenario, "scenario file or builtin name")
        ->required();
    validate->add_flag("--dump", val_dump, "print the canonical form when valid");

    std::string met_trace, met_scenario;
    auto* metrics = app.add_subcommand("metrics", "recompute metrics from a trace CSV");
    metrics->add_option("--trace", met_trace, "trace CSV path")->required();
    metrics->add_option("--scenario", met_scenario,
                        "scenario supplying the targets (otherwise inferred from the "
                        "trace tail)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*run) return cmd_run(run_opt);
        if (*compare) return cmd_compare(cmp_scenario, cmp_out, cmp_plot);
        if (*case3) return cmd_case3(c3_out, c3_plot);
        if (*validate) return cmd_validate(val_scenario, val_dump);
        if (*metrics) return cmd_metrics(met_trace, met_scenario);
    } catch (const fwmav::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fwmav::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
