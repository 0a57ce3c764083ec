#pragma once

// Overall scheduling: assign an over-provisioned base config, profile the
// workflow once, configure the critical path against the full SLO, then
// configure each detour sub-path against the slack the critical path leaves
// between its anchor nodes. Critical-path configs are frozen once set.

#include <set>
#include <string>
#include <vector>

#include "aarc/configurator.hpp"
#include "aarc/cost.hpp"
#include "aarc/perf.hpp"
#include "aarc/trace.hpp"
#include "aarc/workflow.hpp"

namespace aarc {

struct BaseConfig {
    double cpu = kCpuMax;
    int mem = kMemMax;
};

struct ScheduleResult {
    ConfigMap configs;
    TraceLog trace;
    Path critical_path;                 // as measured at base config
    std::vector<std::string> degenerate_subpaths;  // sub-paths that had no slack
};

// Sub-SLO for one detour: the critical path's elapsed time strictly between
// the anchors, minus the runtimes of interior nodes that were already
// scheduled on an earlier sub-path. Clamped at zero; `degenerate` is set
// when the clamp fires (the remaining interior keeps its current configs).
inline double compute_sub_slo(const WorkflowDag& dag, const Path& critical, const SubPath& sp,
                              bool& degenerate) {
    double slack = runtime_sum(dag, critical, sp.start, sp.end);
    for (auto& id : sp.interior) {
        const FunctionNode* n = dag.find(id);
        if (n->scheduled) slack -= n->last_runtime;
    }
    degenerate = slack < 0.0;
    return degenerate ? 0.0 : slack;
}

inline ScheduleResult schedule(WorkflowDag& dag, const ProfileTable& profiles,
                               const ExecutionBackend& backend, const PricingParams& pricing,
                               const TunerParams& params, std::uint64_t seed) {
    validate_dag_or_throw(dag);
    if (dag.slo.end_to_end_seconds <= 0.0)
        throw InfeasibleSlo("SLO must be strictly positive");

    ScheduleResult result;
    SampleBudget budget{params.max_trail, 0};

    for (auto& n : dag.nodes) {
        n.config = ResourceConfig{BaseConfig{}.cpu, BaseConfig{}.mem};
        n.scheduled = false;
        n.invocations = 0;
        n.last_runtime = -1.0;
    }

    // Profiling run at base config populates node weights.
    auto profiling = try_execute_workflow(dag, profiles, backend, seed);
    budget.charge();
    if (!profiling.ok)
        throw WorkflowExecutionFailed(profiling.failed_node,
                                      "oom at base config in node " + profiling.failed_node);
    {
        double cost = 0.0;
        for (auto& n : dag.nodes) cost += function_cost(n.last_runtime, n.config, pricing);
        result.trace.add(TraceRecord{0, "aarc", "*", "joint", 0.0, 0, profiling.total, cost, true,
                                     profiling.elapsed});
    }
    if (profiling.total > dag.slo.end_to_end_seconds)
        throw InfeasibleSlo("base-config makespan exceeds SLO");

    Path critical = find_critical_path(dag);
    result.critical_path = critical;

    ConfigMap configs = priority_configuration(dag, critical.node_ids, dag.slo.end_to_end_seconds,
                                               profiles, backend, pricing, params, seed,
                                               result.trace, budget);
    for (auto& id : critical.node_ids) dag.find(id)->scheduled = true;

    for (auto& sp : find_detour_subpaths(dag, critical)) {
        bool degenerate = false;
        double sub_slo = compute_sub_slo(dag, critical, sp, degenerate);
        std::vector<std::string> remaining;
        for (auto& id : sp.interior)
            if (!dag.find(id)->scheduled) remaining.push_back(id);
        if (remaining.empty()) continue;

        if (degenerate || sub_slo <= 0.0) {
            // No slack: interior nodes keep their current configs.
            result.degenerate_subpaths.push_back(sp.start + ".." + sp.end);
            for (auto& id : remaining) {
                configs[id] = dag.find(id)->config;
                dag.find(id)->scheduled = true;
            }
            continue;
        }

        ConfigMap sub = priority_configuration(dag, remaining, sub_slo, profiles, backend, pricing,
                                               params, seed, result.trace, budget);
        for (auto& [id, cfg] : sub) {
            configs[id] = cfg;
            dag.find(id)->scheduled = true;
        }
    }

    result.configs = std::move(configs);
    return result;
}

}  // namespace aarc
