#pragma once

// Priority configuration: a max-priority queue of per-function deallocation
// ops with exponential step backoff, minimizing path cost subject to a path
// SLO. Untried ops start at +inf priority, ops that just failed retry at 0,
// and successful ops are re-ranked by the cost reduction they achieved.

#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "aarc/cost.hpp"
#include "aarc/perf.hpp"
#include "aarc/trace.hpp"
#include "aarc/types.hpp"
#include "aarc/workflow.hpp"

namespace aarc {

using ConfigMap = std::map<std::string, ResourceConfig>;

// A pending deallocation: remove `step` units of `rtype` from `func`.
struct ResourceOp {
    std::string func;
    ResourceType rtype = ResourceType::Cpu;
    double step = 0.0;   // vCPU for cpu ops, MB for mem ops
    int trail = 0;       // remaining retries
};

struct TunerParams {
    int func_trial = 3;      // per-op retry budget
    int max_trail = 100;     // global sample cap
    double step0_cpu = 1.0;  // vCPU
    double step0_mem = 1024; // MB
    double gran_cpu = 0.1;   // vCPU
    double gran_mem = 64;    // MB
};

// Shared sample budget; one schedule run charges every backend execution
// (profiling included) against a single budget.
struct SampleBudget {
    int limit = 0;
    int used = 0;
    bool exhausted() const { return used >= limit; }
    void charge() { ++used; }
};

inline double resource_granularity(const TunerParams& p, ResourceType t) {
    return t == ResourceType::Cpu ? p.gran_cpu : p.gran_mem;
}

// Proposed config with op.step removed from op.rtype, clamped at the
// global minimum for that resource.
inline ResourceConfig deallocate(const ResourceOp& op, ResourceConfig config) {
    if (op.rtype == ResourceType::Cpu)
        config.cpu = std::max(kCpuMin, config.cpu - op.step);
    else
        config.mem = std::max(kMemMin, config.mem - static_cast<int>(std::llround(op.step)));
    return config;
}

// Backoff after a failed deallocation: halve the step (floored at the
// resource granularity) and spend one retry. Config restoration itself is
// the caller's snapshot revert.
inline std::pair<double, int> allocate(const ResourceOp& op, const TunerParams& params) {
    double gran = resource_granularity(params, op.rtype);
    return {std::max(gran, op.step / 2.0), op.trail - 1};
}

inline bool at_resource_floor(const ResourceConfig& config, ResourceType t) {
    return t == ResourceType::Cpu ? config.cpu <= kCpuMin : config.mem <= kMemMin;
}

namespace detail {

struct PrioritizedOp {
    ResourceOp op;
    double priority = 0.0;  // +inf for untried ops
};

// Max-priority first; ties broken by (node id, resource type) so queue
// order never depends on insertion history.
struct OpLess {
    bool operator()(const PrioritizedOp& a, const PrioritizedOp& b) const {
        if (a.priority != b.priority) return a.priority < b.priority;
        auto key = [](const PrioritizedOp& p) {
            return std::make_pair(p.op.func, p.op.rtype == ResourceType::Mem);
        };
        return key(a) > key(b);
    }
};

}  // namespace detail

// Runs Alg-style priority configuration over `path_ids` against `slo`
// seconds. Path nodes must carry current configs and populated runtimes
// (from the profiling execution). Returns the final per-node configs; the
// nodes' configs and last_runtime fields are left at the last accepted
// (compliant) state.
inline ConfigMap priority_configuration(WorkflowDag& dag,
                                        const std::vector<std::string>& path_ids,
                                        double slo,
                                        const ProfileTable& profiles,
                                        const ExecutionBackend& backend,
                                        const PricingParams& pricing,
                                        const TunerParams& params,
                                        std::uint64_t run_seed,
                                        TraceLog& trace,
                                        SampleBudget& budget,
                                        const std::string& method = "aarc") {
    ConfigMap result;
    if (path_ids.empty()) return result;

    for (auto& id : path_ids)
        if (!dag.find(id)->has_runtime())
            throw MissingRuntime("path node never executed: " + id);

    auto path_cost = [&]() {
        double c = 0.0;
        for (auto& id : path_ids) {
            const FunctionNode* n = dag.find(id);
            c += function_cost(n->last_runtime, n->config, pricing);
        }
        return c;
    };

    std::priority_queue<detail::PrioritizedOp, std::vector<detail::PrioritizedOp>, detail::OpLess> pq;
    double inf = std::numeric_limits<double>::infinity();
    for (auto& id : path_ids) {
        pq.push({ResourceOp{id, ResourceType::Cpu, params.step0_cpu, params.func_trial}, inf});
        pq.push({ResourceOp{id, ResourceType::Mem, params.step0_mem, params.func_trial}, inf});
    }

    double best_cost = path_cost();

    while (!pq.empty() && !budget.exhausted()) {
        ResourceOp op = pq.top().op;
        pq.pop();
        FunctionNode* node = dag.find(op.func);

        // Floor-pinned ops retire without spending a sample.
        if (at_resource_floor(node->config, op.rtype)) continue;

        // Snapshot for exact revert (configs and measured runtimes).
        std::vector<std::pair<ResourceConfig, double>> snapshot;
        snapshot.reserve(path_ids.size());
        for (auto& id : path_ids) {
            const FunctionNode* n = dag.find(id);
            snapshot.emplace_back(n->config, n->last_runtime);
        }

        node->config = deallocate(op, node->config);
        ResourceConfig tried = node->config;

        auto outcome = try_execute_path(dag, path_ids, profiles, backend, run_seed);
        budget.charge();

        double cost = outcome.ok ? path_cost() : std::numeric_limits<double>::infinity();
        bool reject = !outcome.ok || outcome.total > slo || cost >= best_cost;

        trace.add(TraceRecord{0, method, op.func, to_string(op.rtype), tried.cpu, tried.mem,
                              outcome.total, cost, !reject, outcome.elapsed});

        if (reject) {
            for (std::size_t i = 0; i < path_ids.size(); ++i) {
                FunctionNode* n = dag.find(path_ids[i]);
                n->config = snapshot[i].first;
                n->last_runtime = snapshot[i].second;
            }
            auto [new_step, new_trail] = allocate(op, params);
            op.step = new_step;
            op.trail = new_trail;
            if (op.trail > 0) pq.push({op, 0.0});
        } else {
            double reduction = best_cost - cost;
            best_cost = cost;
            pq.push({op, reduction});
        }
    }

    for (auto& id : path_ids) result[id] = dag.find(id)->config;
    return result;
}

}  // namespace aarc
