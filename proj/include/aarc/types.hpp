#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

namespace aarc {

// Global allocation bounds shared by every search method.
inline constexpr double kCpuMin = 0.1;    // vCPU
inline constexpr double kCpuMax = 10.0;   // vCPU
inline constexpr int kMemMin = 128;       // MB
inline constexpr int kMemMax = 10240;     // MB

// Decoupled (vCPU, memory-MB) allocation for one function.
struct ResourceConfig {
    double cpu = kCpuMax;
    int mem = kMemMax;

    bool operator==(const ResourceConfig&) const = default;

    bool within_bounds() const {
        return cpu >= kCpuMin && cpu <= kCpuMax && mem >= kMemMin && mem <= kMemMax;
    }
};

inline double clamp_cpu(double cpu) { return std::clamp(cpu, kCpuMin, kCpuMax); }
inline int clamp_mem(int mem) { return std::clamp(mem, kMemMin, kMemMax); }

// End-to-end latency target.
struct SloSpec {
    double end_to_end_seconds = 0.0;
};

enum class ResourceType { Cpu, Mem };

inline const char* to_string(ResourceType t) { return t == ResourceType::Cpu ? "cpu" : "mem"; }

// ---- Error types ----------------------------------------------------------

struct ValidationError : std::runtime_error {
    enum class Kind { CycleDetected, DuplicateNodeId, MultipleSources, MultipleSinks, DanglingEdge };
    Kind kind;
    ValidationError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

struct ConfigOutOfBounds : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MissingRuntime : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NodeNotOnPath : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WorkflowExecutionFailed : std::runtime_error {
    std::string node_id;
    WorkflowExecutionFailed(std::string node, const std::string& what)
        : std::runtime_error(what), node_id(std::move(node)) {}
};

struct InfeasibleSlo : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownClass : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace aarc
