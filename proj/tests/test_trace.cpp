#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fwmav/trace.hpp"

using namespace fwmav;

namespace {

bool same_bits(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

TraceRecord awkward_record() {
    TraceRecord rec;
    rec.t = 1.0 / 3.0;
    rec.pos = {1e-17, -0.0, M_PI};
    rec.vel = {0.1, 6.02e23, -5e-324};
    rec.vel_body = {-1.0 / 7.0, 2.5, 1e300};
    rec.att = {0.25, -0.125, 3.0};
    rec.omega = {1e-200, -42.0, 0.0};
    rec.s_omega = {9.81, -9.81, 1.0000000000000002};
    rec.s_z = -2.2250738585072014e-308;
    rec.tau_o_hat = {5e-5, -5e-5, 1e-6};
    rec.f_oz_hat = 0.07;
    rec.wing_force_demand << 1e-3, 2e-3, 3e-3, 4e-3;
    rec.amplitude_demand << 20.0, 19.5, 20.5, 21.0;
    rec.offset.force = {0.0, -1.5e-3, 1.5363974349849605e-3};
    rec.offset.torque = {6.43e-5, -6.34e-5, 8.28e-6};
    return rec;
}

std::string csv_of(const std::vector<TraceRecord>& trace) {
    std::ostringstream out;
    write_trace_csv(out, trace);
    return out.str();
}

}  // namespace

TEST_SUITE("trace") {

TEST_CASE("the column set is complete, unique, and time-led") {
    const auto& cols = trace_columns();
    CHECK(cols.size() == static_cast<std::size_t>(kTraceWidth));
    CHECK(cols.front() == "t_s");
    const std::set<std::string> unique(cols.begin(), cols.end());
    CHECK(unique.size() == cols.size());
}

TEST_CASE("flatten and unflatten are exact inverses") {
    const TraceRecord rec = awkward_record();
    const auto row = trace_flatten(rec);
    const auto row2 = trace_flatten(trace_unflatten(row));
    for (int i = 0; i < kTraceWidth; ++i) CHECK(same_bits(row[i], row2[i]));

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int k = 0; k < 20; ++k) {
        std::array<double, kTraceWidth> raw{};
        for (auto& x : raw) x = u(rng);
        const auto back = trace_flatten(trace_unflatten(raw));
        for (int i = 0; i < kTraceWidth; ++i) CHECK(same_bits(raw[i], back[i]));
    }
}

TEST_CASE("csv round trips bit for bit, awkward doubles included") {
    std::vector<TraceRecord> trace{awkward_record(), TraceRecord{}};
    trace[1].t = 1e-3;

    std::istringstream in(csv_of(trace));
    const std::vector<TraceRecord> back = read_trace_csv(in);
    REQUIRE(back.size() == trace.size());
    for (std::size_t r = 0; r < trace.size(); ++r) {
        const auto a = trace_flatten(trace[r]);
        const auto b = trace_flatten(back[r]);
        for (int i = 0; i < kTraceWidth; ++i) CHECK(same_bits(a[i], b[i]));
    }

    // A second write of the parsed trace is byte-identical.
    CHECK(csv_of(back) == csv_of(trace));
}

TEST_CASE("windows line endings are tolerated") {
    std::string csv = csv_of({awkward_record()});
    std::string crlf;
    for (char c : csv) {
        if (c == '\n') crlf += '\r';
        crlf += c;
    }
    std::istringstream in(crlf);
    const std::vector<TraceRecord> back = read_trace_csv(in);
    REQUIRE(back.size() == 1);
    CHECK(same_bits(back[0].t, awkward_record().t));
}

TEST_CASE("an empty trace survives the round trip") {
    std::istringstream in(csv_of({}));
    CHECK(read_trace_csv(in).empty());
}

TEST_CASE("a missing header is an error") {
    std::istringstream in("");
    CHECK_THROWS_WITH_AS(read_trace_csv(in), "trace CSV is empty (missing header)", Error);
}

TEST_CASE("a renamed header column is pinpointed") {
    std::string csv = csv_of({});
    csv.replace(csv.find("t_s"), 3, "sec");
    std::istringstream in(csv);
    CHECK_THROWS_WITH_AS(read_trace_csv(in),
                         "trace CSV header column 1 is 'sec', expected 't_s'", Error);
}

TEST_CASE("a header with the wrong column count is rejected") {
    std::string csv = csv_of({});
    csv.insert(csv.find('\n'), ",extra");
    std::istringstream in(csv);
    CHECK_THROWS_WITH_AS(read_trace_csv(in),
                         "trace CSV header has 39 columns, expected 38", Error);
}

TEST_CASE("a short data line reports its line number") {
    std::string csv = csv_of({});
    csv += "1.0,2.0,3.0\n";
    std::istringstream in(csv);
    CHECK_THROWS_WITH_AS(read_trace_csv(in),
                         "trace CSV line 2 has 3 fields, expected 38", Error);
}

TEST_CASE("a non-numeric field reports itself and its line") {
    std::vector<TraceRecord> trace{TraceRecord{}, TraceRecord{}};
    std::string csv = csv_of(trace);
    const auto pos = csv.rfind("\n0,");
    csv.replace(pos + 1, 1, "x");
    std::istringstream in(csv);
    CHECK_THROWS_WITH_AS(read_trace_csv(in),
                         "trace CSV line 3: cannot parse 'x' as a number", Error);
}

TEST_CASE("file io round trips and surfaces open failures") {
    namespace fs = std::filesystem;
    const std::string path = (fs::temp_directory_path() / "fwmav_trace_test.csv").string();
    const std::vector<TraceRecord> trace{awkward_record()};
    write_trace_csv(path, trace);
    const std::vector<TraceRecord> back = read_trace_csv(path);
    REQUIRE(back.size() == 1);
    const auto a = trace_flatten(trace[0]);
    const auto b = trace_flatten(back[0]);
    for (int i = 0; i < kTraceWidth; ++i) CHECK(same_bits(a[i], b[i]));
    fs::remove(path);

    CHECK_THROWS_AS(read_trace_csv(path), Error);
    CHECK_THROWS_AS(write_trace_csv("/nonexistent-dir/trace.csv", trace), Error);
}

}  // TEST_SUITE
