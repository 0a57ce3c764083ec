#pragma once

// Experiment harness: runs a search method over a workload, evaluates the
// resulting configuration statistically, and assembles comparison reports.
// "Total search runtime" is the sum of simulated sample durations, not host
// wall-clock, so comparisons are hardware-independent and deterministic.

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "aarc/bo.hpp"
#include "aarc/configurator.hpp"
#include "aarc/io.hpp"
#include "aarc/maff.hpp"
#include "aarc/scheduler.hpp"
#include "aarc/templates.hpp"
#include "aarc/trace.hpp"

namespace aarc {

struct EvalStats {
    double mean_runtime = 0.0;
    double std_runtime = 0.0;
    double mean_cost = 0.0;
    double violation_rate = 0.0;
};

// Executes the workflow `runs` times under `configs` with distinct derived
// seeds and reports makespan statistics, mean cost, and the fraction of
// runs exceeding the SLO.
inline EvalStats evaluate_config(const Workload& workload, const ConfigMap& configs, int runs,
                                 std::uint64_t seed, const ExecutionBackend& backend) {
    WorkflowDag dag = workload.dag;
    for (auto& n : dag.nodes) {
        auto it = configs.find(n.id);
        if (it == configs.end()) throw std::runtime_error("config missing node: " + n.id);
        n.config = it->second;
        n.invocations = 0;
    }

    EvalStats stats;
    std::vector<double> makespans;
    makespans.reserve(runs);
    for (int r = 0; r < runs; ++r) {
        double m = execute_workflow(dag, workload.profiles, backend,
                                    hash_combine(seed, static_cast<std::uint64_t>(r)));
        makespans.push_back(m);
        double cost = 0.0;
        for (auto& n : dag.nodes) cost += function_cost(n.last_runtime, n.config, workload.pricing);
        stats.mean_cost += cost;
        if (m > dag.slo.end_to_end_seconds) stats.violation_rate += 1.0;
    }
    double n = static_cast<double>(runs);
    for (double m : makespans) stats.mean_runtime += m;
    stats.mean_runtime /= n;
    double var = 0.0;
    for (double m : makespans) var += (m - stats.mean_runtime) * (m - stats.mean_runtime);
    stats.std_runtime = std::sqrt(var / n);
    stats.mean_cost /= n;
    stats.violation_rate /= n;
    return stats;
}

struct RunSummary {
    std::string method;
    std::uint64_t seed = 0;
    bool ok = true;
    std::string error;
    int samples = 0;
    double sim_time = 0.0;       // sum of per-sample simulated seconds
    double sampling_cost = 0.0;  // sum of per-sample costs
    ConfigMap configs;
    std::vector<TraceRecord> trace;
};

struct MethodParams {
    TunerParams tuner;
    BoParams bo;
    MaffParams maff;
};

// Runs one (method, seed) search on a fresh copy of the workload's DAG.
inline RunSummary run_method(const Workload& workload, const std::string& method,
                             std::uint64_t seed, const MethodParams& params,
                             const ExecutionBackend& backend, bool rethrow = false) {
    RunSummary s;
    s.method = method;
    s.seed = seed;
    WorkflowDag dag = workload.dag;
    try {
        if (method == "aarc") {
            auto r = schedule(dag, workload.profiles, backend, workload.pricing, params.tuner, seed);
            s.configs = std::move(r.configs);
            s.trace = std::move(r.trace.records);
        } else if (method == "bo") {
            auto r = bo_optimize(dag, workload.profiles, backend, workload.pricing, params.bo, seed);
            s.configs = std::move(r.configs);
            s.trace = std::move(r.trace.records);
        } else if (method == "maff") {
            auto r = maff_optimize(dag, workload.profiles, backend, workload.pricing, params.maff, seed);
            s.configs = std::move(r.configs);
            s.trace = std::move(r.trace.records);
        } else {
            throw std::runtime_error("unknown method: " + method);
        }
    } catch (const std::exception& e) {
        if (rethrow) throw;
        s.ok = false;
        s.error = e.what();
        return s;
    }
    s.samples = static_cast<int>(s.trace.size());
    for (auto& r : s.trace) {
        s.sim_time += r.wall_note;
        s.sampling_cost += r.cost == std::numeric_limits<double>::infinity() ? 0.0 : r.cost;
    }
    return s;
}

// Runs every (method, seed) combination; failures are reported per run, not
// fatal to the batch.
inline std::vector<RunSummary> run_experiment(const Workload& workload,
                                              const std::vector<std::string>& methods,
                                              const std::vector<std::uint64_t>& seeds,
                                              const MethodParams& params,
                                              const ExecutionBackend& backend) {
    std::vector<RunSummary> out;
    for (auto& method : methods)
        for (auto seed : seeds) out.push_back(run_method(workload, method, seed, params, backend));
    return out;
}

inline std::string format_report(const Workload& workload, const std::vector<RunSummary>& runs,
                                 int eval_runs, const ExecutionBackend& backend) {
    std::ostringstream os;
    os << "method\tseed\tstatus\tsamples\tsim_time_s\tsampling_cost\t"
          "eval_mean_runtime_s\teval_std_runtime_s\teval_mean_cost\teval_violation_rate\n";
    for (auto& r : runs) {
        os << r.method << '\t' << r.seed << '\t';
        if (!r.ok) {
            os << "error:" << r.error << "\t-\t-\t-\t-\t-\t-\t-\n";
            continue;
        }
        EvalStats e = evaluate_config(workload, r.configs, eval_runs, r.seed ^ 0x5eedull, backend);
        os << "ok\t" << r.samples << '\t' << format_double(r.sim_time) << '\t'
           << format_double(r.sampling_cost) << '\t' << format_double(e.mean_runtime) << '\t'
           << format_double(e.std_runtime) << '\t' << format_double(e.mean_cost) << '\t'
           << format_double(e.violation_rate) << '\n';
    }
    return os.str();
}

// ---- Input-aware configuration engine --------------------------------------

using ClassConfigTable = std::map<std::string, ConfigMap>;

// One schedule run per input class on a workload scaled by the class
// multiplier. Per-class infeasibility is surfaced with the class label.
inline ClassConfigTable input_aware_optimize(const Workload& base,
                                             const std::vector<InputClass>& classes,
                                             const MethodParams& params,
                                             const ExecutionBackend& backend,
                                             std::uint64_t seed) {
    ClassConfigTable table;
    for (auto& cls : classes) {
        Workload scaled = scale_workload(base, cls.scale);
        WorkflowDag dag = scaled.dag;
        try {
            auto r = schedule(dag, scaled.profiles, backend, scaled.pricing, params.tuner, seed);
            table[cls.label] = std::move(r.configs);
        } catch (const InfeasibleSlo& e) {
            throw InfeasibleSlo("class '" + cls.label + "': " + e.what());
        }
    }
    return table;
}

inline const ConfigMap& dispatch(const std::string& label, const ClassConfigTable& table) {
    auto it = table.find(label);
    if (it == table.end()) throw UnknownClass("no configuration for input class: " + label);
    return it->second;
}

}  // namespace aarc
