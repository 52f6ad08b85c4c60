#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fwmav/allocation.hpp"
#include "fwmav/geometry.hpp"

namespace fwmav {

// One telemetry row, emitted once per control tick.
struct TraceRecord {
    double t = 0.0;
    Eigen::Vector3d pos = Eigen::Vector3d::Zero();
    Eigen::Vector3d vel = Eigen::Vector3d::Zero();
    Eigen::Vector3d vel_body = Eigen::Vector3d::Zero();
    Attitude att;
    Eigen::Vector3d omega = Eigen::Vector3d::Zero();
    Eigen::Vector3d s_omega = Eigen::Vector3d::Zero();
    double s_z = 0.0;
    Eigen::Vector3d tau_o_hat = Eigen::Vector3d::Zero();
    double f_oz_hat = 0.0;
    Eigen::Vector4d wing_force_demand = Eigen::Vector4d::Zero();
    Eigen::Vector4d amplitude_demand = Eigen::Vector4d::Zero();
    Wrench offset;
};

inline constexpr int kTraceWidth = 38;

// Column names in file order, units suffixed.
const std::vector<std::string>& trace_columns();

std::array<double, kTraceWidth> trace_flatten(const TraceRecord& rec);
TraceRecord trace_unflatten(const std::array<double, kTraceWidth>& row);

// CSV uses '.' decimal separator and %.17g so doubles survive a round trip
// bit for bit.
void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace);
void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& trace);

std::vector<TraceRecord> read_trace_csv(std::istream& in);
std::vector<TraceRecord> read_trace_csv(const std::string& path);

}  // namespace fwmav
