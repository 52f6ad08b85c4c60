#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fwmav/errors.hpp"
#include "fwmav/scenario.hpp"

using namespace fwmav;

namespace {

Scenario parse_str(const std::string& text) {
    std::istringstream in(text);
    return parse_scenario(in, "src");
}

std::string message_of(const std::string& text) {
    try {
        parse_str(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "(no error)";
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("the builtin list is complete and every entry validates") {
    const auto& names = builtin_scenario_names();
    REQUIRE(names.size() == 5);
    CHECK(names[0] == "no_offset");
    CHECK(names[1] == "case1");
    CHECK(names[2] == "case2");
    CHECK(names[3] == "case3");
    CHECK(names[4] == "altitude_hold_experiment");
    for (const auto& name : names) {
        const Scenario sc = builtin_scenario(name);
        CHECK(sc.name == name);
        CHECK_NOTHROW(sc.validate());
    }
    CHECK_THROWS_WITH_AS(
        builtin_scenario("case9"),
        "unknown builtin scenario 'case9'; available: no_offset, case1, case2, "
        "case3, altitude_hold_experiment",
        ConfigError);
}

TEST_CASE("velocity-step builtins share targets and differ only in offsets") {
    const Scenario base = builtin_scenario("no_offset");
    CHECK(base.controller == ControllerKind::adaptive);
    CHECK(base.offset_case == OffsetCase::none);
    CHECK(base.offsets.is_zero());
    CHECK(base.targets.v_x == 0.5);
    CHECK(base.targets.v_y == 0.5);
    CHECK(base.targets.v_z == 0.5);
    CHECK(base.targets.psi == 1.0);
    CHECK(base.targets.vertical_mode == VerticalMode::velocity);
    CHECK(base.duration == 5.0);
    CHECK(base.control_rate == 1000.0);
    CHECK(base.dt_plant == 1.0e-4);
    CHECK(base.steps_per_tick() == 10);

    const Scenario c1 = builtin_scenario("case1");
    CHECK(c1.offset_case == OffsetCase::case1);
    CHECK(c1.offsets.d_beta == 10.0 * M_PI / 180.0);
    CHECK(c1.offsets.d_gamma == 10.0 * M_PI / 180.0);
    CHECK(c1.offsets.d_l == 5.0e-3);
    CHECK(c1.offsets.d_fw.isZero(0.0));

    for (const char* name : {"case2", "case3"}) {
        const Scenario sc = builtin_scenario(name);
        CHECK(sc.offset_case == OffsetCase::case2);
        CHECK(sc.offsets.d_beta == 0.0);
        CHECK(sc.offsets.d_fw(1) == -sc.robot.mass * sc.robot.gravity / 12.0);
        CHECK(sc.offsets.d_fw(0) == 0.0);
        CHECK(sc.offsets.d_fw(2) == 0.0);
        CHECK(sc.offsets.d_fw(3) == 0.0);
        CHECK(sc.targets.psi == 1.0);
    }
}

TEST_CASE("the altitude-hold builtin flips mass, vertical mode, and yaw feedforward") {
    const Scenario sc = builtin_scenario("altitude_hold_experiment");
    CHECK(sc.robot.mass == 1.52e-3);
    CHECK(sc.targets.vertical_mode == VerticalMode::position);
    CHECK(sc.targets.z == 0.05);
    CHECK(sc.targets.v_z == 0.0);
    CHECK(sc.gains.yaw_feedforward_off);
    CHECK(sc.offset_case == OffsetCase::none);
}

TEST_CASE("the shipped scenario files reproduce the builtins exactly") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::path(FWMAV_SOURCE_DIR) / "scenarios";
    for (const auto& name : builtin_scenario_names()) {
        CAPTURE(name);
        const Scenario from_file = load_scenario((dir / (name + ".cfg")).string());
        CHECK(scenario_to_ini(from_file) == scenario_to_ini(builtin_scenario(name)));
    }
}

TEST_CASE("canonical serialization round trips every builtin") {
    for (const auto& name : builtin_scenario_names()) {
        CAPTURE(name);
        const std::string ini = scenario_to_ini(builtin_scenario(name));
        CHECK(scenario_to_ini(parse_str(ini)) == ini);
    }
}

TEST_CASE("custom offsets with per-wing overrides survive the round trip") {
    const Scenario sc = parse_str(
        "[run]\n"
        "name = bent_frame\n"
        "[offsets]\n"
        "case = custom\n"
        "d_beta_rad = 0.05\n"
        "d_gamma_deg = -3\n"
        "d_l_m = 1e-3\n"
        "d_fw_2_N = -1.6e-3\n"
        "d_gamma_1_deg = 1\n"
        "d_gamma_2_deg = 2\n"
        "d_gamma_3_deg = -1\n"
        "d_gamma_4_deg = 0.5\n");
    CHECK(sc.offset_case == OffsetCase::custom);
    CHECK(sc.offsets.d_beta == 0.05);
    CHECK(sc.offsets.d_gamma == -3.0 * M_PI / 180.0);
    CHECK(sc.offsets.d_l == 1e-3);
    CHECK(sc.offsets.d_fw(1) == -1.6e-3);
    CHECK(sc.offsets.d_fw(0) == 0.0);
    REQUIRE(sc.offsets.d_gamma_per_wing.has_value());
    CHECK((*sc.offsets.d_gamma_per_wing)[1] == 2.0 * M_PI / 180.0);
    CHECK(!sc.offsets.d_beta_per_wing);
    CHECK(!sc.offsets.d_l_per_wing);

    const std::string ini = scenario_to_ini(sc);
    CHECK(scenario_to_ini(parse_str(ini)) == ini);
}

TEST_CASE("degree and radian spellings of an angle agree") {
    const Scenario deg = parse_str("[geometry]\nbeta_deg = 53\ngamma_deg = 10\n");
    const Scenario rad = parse_str(
        "[geometry]\n"
        "beta_rad = 0.92502450355699462\n"
        "gamma_rad = 0.17453292519943295\n");
    CHECK(deg.geometry.beta == 53.0 * M_PI / 180.0);
    CHECK(deg.geometry.beta == rad.geometry.beta);
    CHECK(deg.geometry.gamma == rad.geometry.gamma);
}

TEST_CASE("comments, blank lines, and loose whitespace are ignored") {
    const Scenario sc = parse_str(
        "# full-line comment\n"
        "\n"
        "[ targets ]\n"
        "  v_x_mps=0.25  # trailing comment\n"
        "\tv_y_mps =\t-0.125 ; semicolon comment\n"
        "; another full-line comment\n");
    CHECK(sc.targets.v_x == 0.25);
    CHECK(sc.targets.v_y == -0.125);
}

TEST_CASE("parse errors carry the source name and line number") {
    CHECK(message_of("[gemoetry]\n") == "src:1: unknown section [gemoetry]");
    CHECK(message_of("[geometry]\nwingspan_m = 0.1\n") ==
          "src:2: unknown key 'wingspan_m' in [geometry]");
    CHECK(message_of("[geometry]\na_m = 0.02\na_m = 0.03\n") ==
          "src:3: duplicate value for 'geometry.a_m'");
    CHECK(message_of("[geometry]\nbeta_deg = 20\nbeta_rad = 0.3\n") ==
          "src:3: duplicate value for 'geometry.beta'");
    CHECK(message_of("[gains]\nk_eta_y = 3\nk_eta_y = 3\n") ==
          "src:3: duplicate value for 'gains.k_eta_y'");
    CHECK(message_of("v_x_mps = 0.5\n") ==
          "src:1: key 'v_x_mps' appears outside any [section]");
    CHECK(message_of("[targets\n") == "src:1: malformed section header '[targets'");
    CHECK(message_of("[targets]\nv_x_mps\n") ==
          "src:2: expected 'key = value', got 'v_x_mps'");
    CHECK(message_of("[targets]\n= 0.5\n") == "src:2: missing key before '='");
    CHECK(message_of("[targets]\nv_x_mps =\n") ==
          "src:2: missing value for key 'v_x_mps'");
    CHECK(message_of("[targets]\nv_x_mps = fast\n") ==
          "src:2: 'fast' is not a finite number");
    CHECK(message_of("[targets]\nv_x_mps = 1e999\n") ==
          "src:2: '1e999' is not a finite number");
    CHECK(message_of("[gains]\nyaw_feedforward_off = yes\n") ==
          "src:2: 'yes' is not a boolean (use true or false)");
    CHECK(message_of("[offsets]\ncase = case7\n") ==
          "src:2: offset case must be none, case1, case2, or custom (got 'case7')");
    CHECK(message_of("[run]\ncontroller = pid\n") ==
          "src:2: controller must be adaptive or lqi (got 'pid')");
    CHECK(message_of("[targets]\nvertical_mode = altitude\n") ==
          "src:2: vertical_mode must be velocity or position (got 'altitude')");
    CHECK(message_of("[run]\nseed = -1\n") ==
          "src:2: seed must be a nonnegative integer (got '-1')");
    CHECK(message_of("[run]\nseed = 1.5\n") ==
          "src:2: seed must be a nonnegative integer (got '1.5')");
}

TEST_CASE("offset tweaks demand the custom case") {
    CHECK(message_of("[offsets]\nd_l_m = 1e-3\n") ==
          "src: [offsets] d_* keys require 'case = custom'");
    CHECK(message_of("[offsets]\ncase = case1\nd_beta_deg = 1\n") ==
          "src: [offsets] d_* keys require 'case = custom'");
}

TEST_CASE("per-wing overrides are all four wings or nothing") {
    CHECK(message_of(
              "[offsets]\ncase = custom\n"
              "d_beta_1_deg = 1\nd_beta_2_deg = 1\nd_beta_3_deg = 1\n") ==
          "src: per-wing d_beta overrides require all four wings (got 3)");
    CHECK(message_of("[offsets]\ncase = custom\nd_l_2_m = 1e-3\n") ==
          "src: per-wing d_l overrides require all four wings (got 1)");
}

TEST_CASE("validation lists every problem at once") {
    Scenario sc;
    sc.name = "broken";
    sc.duration = -1.0;
    sc.control_rate = 0.0;
    sc.dt_plant = -1e-4;
    sc.robot.mass = 0.0;
    CHECK_THROWS_WITH_AS(sc.validate(),
                         "invalid scenario 'broken':\n"
                         "  - duration_s must be >= 0\n"
                         "  - control_rate_hz must be positive\n"
                         "  - dt_plant_s must be positive\n"
                         "  - mass_kg must be positive",
                         ConfigError);
}

TEST_CASE("the control period must be an integer multiple of the plant step") {
    Scenario sc;
    sc.dt_plant = 3.0e-4;
    try {
        sc.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("integer multiple of") != std::string::npos);
        CHECK(msg.find("adjust control_rate_hz or dt_plant_s") != std::string::npos);
    }
    sc.dt_plant = 2.5e-4;
    CHECK_NOTHROW(sc.validate());
    CHECK(sc.steps_per_tick() == 4);
    sc.dt_plant = 1.0e-3;
    CHECK_NOTHROW(sc.validate());
    CHECK(sc.steps_per_tick() == 1);
}

TEST_CASE("degenerate wing tilt and an impossible clamp window are caught") {
    Scenario sc;
    sc.geometry.beta = M_PI / 2.0;
    sc.wing_model.clamp_enabled = true;
    sc.wing_model.v_min = 30.0;
    sc.wing_model.v_max = 20.0;
    try {
        sc.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("keep it strictly inside (-90, 90) deg") != std::string::npos);
        CHECK(msg.find("v_min_V must be below v_max_V") != std::string::npos);
        CHECK(msg.find("hover is unreachable") != std::string::npos);
    }
}

TEST_CASE("an estimates file reference is carried through serialization") {
    const Scenario sc = parse_str("[initial]\nestimates_file = adapted.txt\n");
    CHECK(sc.estimates_file == "adapted.txt");
    const std::string ini = scenario_to_ini(sc);
    CHECK(ini.find("estimates_file = adapted.txt\n") != std::string::npos);
    CHECK(scenario_to_ini(parse_str(ini)) == ini);
    CHECK(scenario_to_ini(Scenario{}).find("estimates_file") == std::string::npos);
}

TEST_CASE("resolve prefers builtin names and falls back to paths") {
    CHECK(scenario_to_ini(resolve_scenario("case2")) ==
          scenario_to_ini(builtin_scenario("case2")));

    namespace fs = std::filesystem;
    const std::string path = (fs::temp_directory_path() / "fwmav_custom.cfg").string();
    {
        std::ofstream out(path);
        out << "[run]\nname = from_file\n[targets]\nv_z_mps = 0.2\n";
    }
    const Scenario sc = resolve_scenario(path);
    CHECK(sc.name == "from_file");
    CHECK(sc.targets.v_z == 0.2);
    fs::remove(path);

    CHECK_THROWS_WITH_AS(resolve_scenario("/no/such/file.cfg"),
                         "cannot open scenario file: /no/such/file.cfg", ConfigError);
}

TEST_CASE("initial state and estimate keys land in the right slots") {
    const Scenario sc = parse_str(
        "[initial]\n"
        "z_m = -0.02\n"
        "vx_mps = 0.1\n"
        "roll_rad = 0.03\n"
        "wz_radps = -0.4\n"
        "tau_o_hat_y_Nm = 5.5e-5\n"
        "f_oz_hat_N = 1.5e-3\n");
    CHECK(sc.initial_state.pos(2) == -0.02);
    CHECK(sc.initial_state.vel(0) == 0.1);
    CHECK(sc.initial_state.att.phi == 0.03);
    CHECK(sc.initial_state.omega.z == -0.4);
    CHECK(sc.initial_estimates.tau_o_hat(1) == 5.5e-5);
    CHECK(sc.initial_estimates.f_oz_hat == 1.5e-3);
}

}  // TEST_SUITE
