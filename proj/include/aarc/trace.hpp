#pragma once

// One TraceRecord per sampling event, emitted by every optimizer so a
// single comparison pipeline can consume all methods. Serialized as flat
// CSV with a header row.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace aarc {

struct TraceRecord {
    int sample_idx = 0;
    std::string method;
    std::string node_id;      // "*" for whole-workflow samples
    std::string op_type;      // cpu | mem | joint
    double cpu = 0.0;         // summed over nodes for whole-workflow samples
    int mem = 0;              // likewise
    double runtime_s = 0.0;
    double cost = 0.0;
    bool accepted = false;
    double wall_note = 0.0;   // simulated seconds consumed by this sample

    bool operator==(const TraceRecord&) const = default;
};

// Accumulates records for one optimizer run; sample_idx is assigned here
// and is strictly increasing.
struct TraceLog {
    std::vector<TraceRecord> records;

    TraceRecord& add(TraceRecord r) {
        r.sample_idx = static_cast<int>(records.size());
        records.push_back(std::move(r));
        return records.back();
    }
};

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_trace(std::ostream& os, const std::vector<TraceRecord>& records) {
    os << "sample_idx,method,node_id,op_type,cpu,mem,runtime_s,cost,accepted,wall_note\n";
    for (auto& r : records) {
        os << r.sample_idx << ',' << r.method << ',' << r.node_id << ',' << r.op_type << ','
           << format_double(r.cpu) << ',' << r.mem << ',' << format_double(r.runtime_s) << ','
           << format_double(r.cost) << ',' << (r.accepted ? 1 : 0) << ','
           << format_double(r.wall_note) << '\n';
    }
}

inline void write_trace_file(const std::string& path, const std::vector<TraceRecord>& records) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open trace file for writing: " + path);
    write_trace(f, records);
}

inline std::vector<TraceRecord> parse_trace(std::istream& is) {
    std::vector<TraceRecord> out;
    std::string line;
    if (!std::getline(is, line)) return out;  // header
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        TraceRecord r;
        auto next = [&]() {
            if (!std::getline(ss, field, ',')) throw std::runtime_error("malformed trace row: " + line);
            return field;
        };
        r.sample_idx = std::stoi(next());
        r.method = next();
        r.node_id = next();
        r.op_type = next();
        r.cpu = std::stod(next());
        r.mem = std::stoi(next());
        r.runtime_s = std::stod(next());
        r.cost = std::stod(next());
        r.accepted = std::stoi(next()) != 0;
        r.wall_note = std::stod(next());
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<TraceRecord> parse_trace_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open trace file: " + path);
    return parse_trace(f);
}

}  // namespace aarc
