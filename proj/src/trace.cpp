#include "fwmav/trace.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fwmav/errors.hpp"

namespace fwmav {

const std::vector<std::string>& trace_columns() {
    static const std::vector<std::string> cols = {
        "t_s",
        "pos_x_m", "pos_y_m", "pos_z_m",
        "vel_x_mps", "vel_y_mps", "vel_z_mps",
        "vel_body_x_mps", "vel_body_y_mps", "vel_body_z_mps",
        "att_roll_rad", "att_pitch_rad", "att_yaw_rad",
        "omega_x_radps", "omega_y_radps", "omega_z_radps",
        "s_omega_x", "s_omega_y", "s_omega_z",
        "s_z",
        "tau_o_hat_x_Nm", "tau_o_hat_y_Nm", "tau_o_hat_z_Nm",
        "f_oz_hat_N",
        "wing_force_demand_1_N", "wing_force_demand_2_N",
        "wing_force_demand_3_N", "wing_force_demand_4_N",
        "amplitude_demand_1_V", "amplitude_demand_2_V",
        "amplitude_demand_3_V", "amplitude_demand_4_V",
        "offset_force_x_N", "offset_force_y_N", "offset_force_z_N",
        "offset_torque_x_Nm", "offset_torque_y_Nm", "offset_torque_z_Nm",
    };
    return cols;
}

std::array<double, kTraceWidth> trace_flatten(const TraceRecord& rec) {
    std::array<double, kTraceWidth> row{};
    int k = 0;
    row[k++] = rec.t;
    for (int i = 0; i < 3; ++i) row[k++] = rec.pos(i);
    for (int i = 0; i < 3; ++i) row[k++] = rec.vel(i);
    for (int i = 0; i < 3; ++i) row[k++] = rec.vel_body(i);
    row[k++] = rec.att.phi;
    row[k++] = rec.att.theta;
    row[k++] = rec.att.psi;
    for (int i = 0; i < 3; ++i) row[k++] = rec.omega(i);
    for (int i = 0; i < 3; ++i) row[k++] = rec.s_omega(i);
    row[k++] = rec.s_z;
    for (int i = 0; i < 3; ++i) row[k++] = rec.tau_o_hat(i);
    row[k++] = rec.f_oz_hat;
    for (int i = 0; i < 4; ++i) row[k++] = rec.wing_force_demand(i);
    for (int i = 0; i < 4; ++i) row[k++] = rec.amplitude_demand(i);
    for (int i = 0; i < 3; ++i) row[k++] = rec.offset.force(i);
    for (int i = 0; i < 3; ++i) row[k++] = rec.offset.torque(i);
    return row;
}

TraceRecord trace_unflatten(const std::array<double, kTraceWidth>& row) {
    TraceRecord rec;
    int k = 0;
    rec.t = row[k++];
    for (int i = 0; i < 3; ++i) rec.pos(i) = row[k++];
    for (int i = 0; i < 3; ++i) rec.vel(i) = row[k++];
    for (int i = 0; i < 3; ++i) rec.vel_body(i) = row[k++];
    rec.att.phi = row[k++];
    rec.att.theta = row[k++];
    rec.att.psi = row[k++];
    for (int i = 0; i < 3; ++i) rec.omega(i) = row[k++];
    for (int i = 0; i < 3; ++i) rec.s_omega(i) = row[k++];
    rec.s_z = row[k++];
    for (int i = 0; i < 3; ++i) rec.tau_o_hat(i) = row[k++];
    rec.f_oz_hat = row[k++];
    for (int i = 0; i < 4; ++i) rec.wing_force_demand(i) = row[k++];
    for (int i = 0; i < 4; ++i) rec.amplitude_demand(i) = row[k++];
    for (int i = 0; i < 3; ++i) rec.offset.force(i) = row[k++];
    for (int i = 0; i < 3; ++i) rec.offset.torque(i) = row[k++];
    return rec;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace) {
    const auto& cols = trace_columns();
    for (int i = 0; i < kTraceWidth; ++i) {
        if (i > 0) out << ',';
        out << cols[static_cast<std::size_t>(i)];
    }
    out << '\n';
    char buf[32];
    for (const TraceRecord& rec : trace) {
        const auto row = trace_flatten(rec);
        for (int i = 0; i < kTraceWidth; ++i) {
            if (i > 0) out << ',';
            std::snprintf(buf, sizeof buf, "%.17g", row[static_cast<std::size_t>(i)]);
            out << buf;
        }
        out << '\n';
    }
}

void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& trace) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open trace file for writing: " + path);
    write_trace_csv(out, trace);
    out.flush();
    if (!out) throw Error("failed writing trace file: " + path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

}  // namespace

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error("trace CSV is empty (missing header)");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split_csv_line(line);
    const auto& cols = trace_columns();
    if (header.size() != static_cast<std::size_t>(kTraceWidth))
        throw Error("trace CSV header has " + std::to_string(header.size()) +
                    " columns, expected " + std::to_string(kTraceWidth));
    for (int i = 0; i < kTraceWidth; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (header[idx] != cols[idx])
            throw Error("trace CSV header column " + std::to_string(i + 1) +
                        " is '" + header[idx] + "', expected '" + cols[idx] + "'");
    }

    std::vector<TraceRecord> trace;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != static_cast<std::size_t>(kTraceWidth))
            throw Error("trace CSV line " + std::to_string(line_no) + " has " +
                        std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(kTraceWidth));
        std::array<double, kTraceWidth> row{};
        for (int i = 0; i < kTraceWidth; ++i) {
            const std::string& field = fields[static_cast<std::size_t>(i)];
            char* end = nullptr;
            row[static_cast<std::size_t>(i)] = std::strtod(field.c_str(), &end);
            if (end == field.c_str() || *end != '\0')
                throw Error("trace CSV line " + std::to_string(line_no) +
                            ": cannot parse '" + field + "' as a number");
        }
        trace.push_back(trace_unflatten(row));
    }
    return trace;
}

std::vector<TraceRecord> read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open trace file: " + path);
    return read_trace_csv(in);
}

}  // namespace fwmav
