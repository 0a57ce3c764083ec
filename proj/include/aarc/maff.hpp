#pragma once

// MAFF-style coupled descent baseline: CPU is tied to memory at 1 vCPU per
// 1024 MB. Each round evaluates, for every node, the workflow with that
// node's memory reduced by one step, applies the best improvement, and
// terminates when the best candidate violates the SLO or raises cost.

#include <limits>
#include <string>
#include <vector>

#include "aarc/configurator.hpp"
#include "aarc/cost.hpp"
#include "aarc/perf.hpp"
#include "aarc/trace.hpp"
#include "aarc/workflow.hpp"

namespace aarc {

struct MaffParams {
    int mem_step = 1024;  // MB removed per descent step
};

inline ResourceConfig maff_coupled_config(int mem) {
    mem = clamp_mem(mem);
    return ResourceConfig{clamp_cpu(static_cast<double>(mem) / 1024.0), mem};
}

struct MaffResult {
    ConfigMap configs;
    TraceLog trace;
};

inline MaffResult maff_optimize(WorkflowDag& dag, const ProfileTable& profiles,
                                const ExecutionBackend& backend, const PricingParams& pricing,
                                const MaffParams& params, std::uint64_t seed) {
    validate_dag_or_throw(dag);
    MaffResult result;

    ConfigMap current;
    for (auto& n : dag.nodes) {
        n.config = maff_coupled_config(kMemMax);
        n.invocations = 0;
        current[n.id] = n.config;
    }

    auto workflow_cost = [&]() {
        double c = 0.0;
        for (auto& n : dag.nodes) c += function_cost(n.last_runtime, n.config, pricing);
        return c;
    };
    auto totals = [&](double& cpu_sum, int& mem_sum) {
        cpu_sum = 0.0;
        mem_sum = 0;
        for (auto& n : dag.nodes) {
            cpu_sum += n.config.cpu;
            mem_sum += n.config.mem;
        }
    };

    auto base = try_execute_workflow(dag, profiles, backend, seed);
    double cpu_sum;
    int mem_sum;
    totals(cpu_sum, mem_sum);
    double best_cost = base.ok ? workflow_cost() : std::numeric_limits<double>::infinity();
    result.trace.add(TraceRecord{0, "maff", "*", "joint", cpu_sum, mem_sum, base.total, best_cost,
                                 base.ok && base.total <= dag.slo.end_to_end_seconds, base.elapsed});
    if (!base.ok || base.total > dag.slo.end_to_end_seconds) {
        result.configs = current;
        return result;  // already violating at base: empty descent
    }

    std::vector<std::string> ids;
    for (auto& n : dag.nodes) ids.push_back(n.id);
    std::sort(ids.begin(), ids.end());

    while (true) {
        std::string best_node;
        double best_candidate_cost = std::numeric_limits<double>::infinity();
        bool best_feasible = false;
        std::size_t best_row = 0;

        for (auto& id : ids) {
            FunctionNode* node = dag.find(id);
            if (node->config.mem <= kMemMin) continue;
            ResourceConfig saved = node->config;
            node->config = maff_coupled_config(saved.mem - params.mem_step);

            auto out = try_execute_workflow(dag, profiles, backend, seed);
            double cost = out.ok ? workflow_cost() : std::numeric_limits<double>::infinity();
            bool feasible = out.ok && out.total <= dag.slo.end_to_end_seconds;

            auto& row = result.trace.add(TraceRecord{0, "maff", id, "joint", node->config.cpu,
                                                     node->config.mem, out.total, cost, false,
                                                     out.elapsed});
            if (cost < best_candidate_cost) {
                best_candidate_cost = cost;
                best_node = id;
                best_feasible = feasible;
                best_row = static_cast<std::size_t>(row.sample_idx);
            }
            node->config = saved;
        }

        if (best_node.empty() || !best_feasible || best_candidate_cost >= best_cost) break;

        FunctionNode* node = dag.find(best_node);
        node->config = maff_coupled_config(node->config.mem - params.mem_step);
        current[best_node] = node->config;
        best_cost = best_candidate_cost;
        result.trace.records[best_row].accepted = true;
    }

    // Leave the dag at the accepted configuration.
    for (auto& [id, cfg] : current) dag.find(id)->config = cfg;
    result.configs = std::move(current);
    return result;
}

}  // namespace aarc
