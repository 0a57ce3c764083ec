#pragma once

// Synthetic stand-in for real function execution: a parametric runtime
// surface t(cpu, mem) per function behind a pluggable backend contract,
// so a real container runner could be substituted later.

#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <string>

#include "aarc/rng.hpp"
#include "aarc/types.hpp"
#include "aarc/workflow.hpp"

namespace aarc {

// Runtime model: t = [t0 + cpu_work / min(cpu, parallel_cap) + mem_penalty] * noise,
// where mem_penalty ramps linearly from 0 at mem_knee down to mem_slowdown
// at mem_floor, and execution fails (oom) below mem_floor.
struct FunctionPerfProfile {
    double t0 = 0.0;            // seconds of fixed overhead
    double cpu_work = 0.0;      // vCPU-seconds of divisible compute
    double parallel_cap = kCpuMax;  // vCPUs beyond which extra CPU is wasted
    int mem_floor = kMemMin;    // MB; below this the function OOMs
    int mem_knee = kMemMin;     // MB; below this memory pressure slows execution
    double mem_slowdown = 0.0;  // seconds of added latency at mem_floor
    double noise_sigma = 0.0;   // relative multiplicative noise
};

using ProfileTable = std::map<std::string, FunctionPerfProfile>;

enum class FailureKind { None, Oom };

struct ExecutionResult {
    double runtime = 0.0;  // seconds
    bool success = true;
    FailureKind failure_kind = FailureKind::None;
};

// Contract: same (profile, config, seed) must yield an identical result.
class ExecutionBackend {
public:
    virtual ~ExecutionBackend() = default;
    virtual ExecutionResult run(const FunctionPerfProfile& profile,
                                const ResourceConfig& config,
                                std::uint64_t seed) const = 0;
};

inline ExecutionResult simulate_runtime(const FunctionPerfProfile& profile,
                                        const ResourceConfig& config,
                                        std::uint64_t seed) {
    if (!config.within_bounds())
        throw ConfigOutOfBounds("config outside global bounds");
    if (config.mem < profile.mem_floor) return {0.0, false, FailureKind::Oom};

    double effective_cpu = std::min(config.cpu, profile.parallel_cap);
    double runtime = profile.t0;
    if (profile.cpu_work > 0.0) runtime += profile.cpu_work / effective_cpu;
    if (config.mem < profile.mem_knee && profile.mem_knee > profile.mem_floor) {
        double frac = static_cast<double>(profile.mem_knee - config.mem) /
                      static_cast<double>(profile.mem_knee - profile.mem_floor);
        runtime += profile.mem_slowdown * std::max(0.0, frac);
    }
    if (profile.noise_sigma > 0.0) {
        SplitMix rng(seed);
        runtime *= std::max(0.01, 1.0 + profile.noise_sigma * rng.next_gaussian());
    }
    return {runtime, true, FailureKind::None};
}

class SimulatedBackend final : public ExecutionBackend {
public:
    ExecutionResult run(const FunctionPerfProfile& profile, const ResourceConfig& config,
                        std::uint64_t seed) const override {
        return simulate_runtime(profile, config, seed);
    }
};

// Shells out to a user-supplied program and parses a single floating-point
// runtime from its stdout. Hook for plugging in a real runner; the profile
// is ignored and cpu/mem/seed are passed as arguments.
class ExternalCommandBackend final : public ExecutionBackend {
public:
    explicit ExternalCommandBackend(std::string command) : command_(std::move(command)) {}

    ExecutionResult run(const FunctionPerfProfile&, const ResourceConfig& config,
                        std::uint64_t seed) const override {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s %.3f %d %llu", command_.c_str(), config.cpu,
                      config.mem, static_cast<unsigned long long>(seed));
        FILE* pipe = ::popen(buf, "r");
        if (!pipe) return {0.0, false, FailureKind::Oom};
        double runtime = 0.0;
        int parsed = std::fscanf(pipe, "%lf", &runtime);
        int status = ::pclose(pipe);
        if (parsed != 1 || status != 0 || runtime <= 0.0) return {0.0, false, FailureKind::Oom};
        return {runtime, true, FailureKind::None};
    }

private:
    std::string command_;
};

// ---- Execution drivers -----------------------------------------------------

struct ExecOutcome {
    bool ok = true;
    std::string failed_node;                 // set when !ok
    double total = 0.0;                      // makespan (workflow) or sequential sum (path)
    double elapsed = 0.0;                    // simulated seconds actually consumed
    std::map<std::string, double> runtimes;  // per executed node
};

inline std::uint64_t node_seed(std::uint64_t run_seed, const std::string& node_id, int invocation) {
    return hash_combine(hash_combine(run_seed, fnv1a(node_id)),
                        static_cast<std::uint64_t>(invocation));
}

// Runs every node once, writes last_runtime, returns the makespan (weight of
// the heaviest source-to-sink path; parallel branches overlap fully).
inline ExecOutcome try_execute_workflow(WorkflowDag& dag, const ProfileTable& profiles,
                                        const ExecutionBackend& backend, std::uint64_t seed) {
    ExecOutcome out;
    for (auto& id : topological_order(dag)) {
        FunctionNode* n = dag.find(id);
        auto r = backend.run(profiles.at(n->profile_ref), n->config,
                             node_seed(seed, n->id, n->invocations));
        ++n->invocations;
        if (!r.success) {
            out.ok = false;
            out.failed_node = id;
            return out;
        }
        n->last_runtime = r.runtime;
        out.runtimes[id] = r.runtime;
        out.elapsed += r.runtime;
    }
    out.total = makespan(dag);
    return out;
}

inline double execute_workflow(WorkflowDag& dag, const ProfileTable& profiles,
                               const ExecutionBackend& backend, std::uint64_t seed) {
    auto out = try_execute_workflow(dag, profiles, backend, seed);
    if (!out.ok) throw WorkflowExecutionFailed(out.failed_node, "oom in node " + out.failed_node);
    return out.total;
}

// Runs only the listed nodes, sequentially; total is the sum of their
// runtimes. This is the measurement the priority configurator uses.
inline ExecOutcome try_execute_path(WorkflowDag& dag, const std::vector<std::string>& path_ids,
                                    const ProfileTable& profiles, const ExecutionBackend& backend,
                                    std::uint64_t seed) {
    ExecOutcome out;
    for (auto& id : path_ids) {
        FunctionNode* n = dag.find(id);
        auto r = backend.run(profiles.at(n->profile_ref), n->config,
                             node_seed(seed, n->id, n->invocations));
        ++n->invocations;
        if (!r.success) {
            out.ok = false;
            out.failed_node = id;
            return out;
        }
        n->last_runtime = r.runtime;
        out.runtimes[id] = r.runtime;
        out.elapsed += r.runtime;
        out.total += r.runtime;
    }
    return out;
}

}  // namespace aarc
