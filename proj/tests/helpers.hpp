#pragma once

// Shared test fixtures: tiny DAG builders, scripted execution backends, and
// a seeded random-DAG generator with a brute-force longest-path oracle.

#include <functional>
#include <string>
#include <vector>

#include "aarc/io.hpp"
#include "aarc/perf.hpp"
#include "aarc/rng.hpp"
#include "aarc/workflow.hpp"

namespace testutil {

using namespace aarc;

// Workload whose nodes run at fixed, config-independent runtimes.
inline Workload fixed_runtime_workload(const std::vector<std::pair<std::string, double>>& nodes,
                                       const std::vector<std::pair<std::string, std::string>>& edges,
                                       double slo) {
    Workload w;
    for (auto& [id, rt] : nodes) {
        FunctionPerfProfile p;
        p.t0 = rt;
        w.profiles[id] = p;
        FunctionNode n;
        n.id = id;
        n.profile_ref = id;
        w.dag.nodes.push_back(std::move(n));
    }
    for (auto& [from, to] : edges) w.dag.edges.push_back({from, to});
    w.dag.slo.end_to_end_seconds = slo;
    return w;
}

// Backend driven by an arbitrary function; used to script exact runtimes.
class LambdaBackend final : public ExecutionBackend {
public:
    using Fn = std::function<ExecutionResult(const FunctionPerfProfile&, const ResourceConfig&,
                                             std::uint64_t)>;
    explicit LambdaBackend(Fn fn) : fn_(std::move(fn)) {}
    ExecutionResult run(const FunctionPerfProfile& p, const ResourceConfig& c,
                        std::uint64_t s) const override {
        return fn_(p, c, s);
    }

private:
    Fn fn_;
};

// Wraps another backend, counting calls and recording sampled configs.
class RecordingBackend final : public ExecutionBackend {
public:
    explicit RecordingBackend(const ExecutionBackend& inner) : inner_(inner) {}
    ExecutionResult run(const FunctionPerfProfile& p, const ResourceConfig& c,
                        std::uint64_t s) const override {
        ++calls;
        configs.push_back(c);
        return inner_.run(p, c, s);
    }
    mutable int calls = 0;
    mutable std::vector<ResourceConfig> configs;

private:
    const ExecutionBackend& inner_;
};

// Random connected single-source/single-sink DAG over n <= 12 nodes with
// node weights already assigned to last_runtime.
inline WorkflowDag random_weighted_dag(std::uint64_t seed) {
    SplitMix rng(seed);
    int n = 3 + static_cast<int>(rng.next_below(10));  // 3..12
    WorkflowDag dag;
    for (int i = 0; i < n; ++i) {
        FunctionNode node;
        char buf[8];
        std::snprintf(buf, sizeof(buf), "n%02d", i);
        node.id = buf;
        node.last_runtime = 0.1 + 9.9 * rng.next_double();
        dag.nodes.push_back(std::move(node));
    }
    // Every node after the first gets a predecessor; every node before the
    // last gets a successor; then sprinkle extra forward edges.
    auto id = [&](int i) { return dag.nodes[i].id; };
    for (int i = 1; i < n; ++i)
        dag.edges.push_back({id(static_cast<int>(rng.next_below(i))), id(i)});
    for (int i = 0; i < n - 1; ++i) {
        bool has_out = false;
        for (auto& e : dag.edges)
            if (e.from == id(i)) has_out = true;
        if (!has_out)
            dag.edges.push_back({id(i), id(i + 1 + static_cast<int>(rng.next_below(n - i - 1)))});
    }
    int extra = static_cast<int>(rng.next_below(n));
    for (int k = 0; k < extra; ++k) {
        int a = static_cast<int>(rng.next_below(n - 1));
        int b = a + 1 + static_cast<int>(rng.next_below(n - a - 1));
        Edge e{id(a), id(b)};
        bool dup = false;
        for (auto& ex : dag.edges)
            if (ex == e) dup = true;
        if (!dup) dag.edges.push_back(e);
    }
    dag.slo.end_to_end_seconds = 1e9;
    return dag;
}

// Exhaustive source-to-sink path enumeration; returns the max path weight.
inline double brute_force_longest_path(const WorkflowDag& dag) {
    std::string source = source_of(dag), sink = sink_of(dag);
    double best = -1.0;
    std::function<void(const std::string&, double)> dfs = [&](const std::string& u, double acc) {
        acc += dag.find(u)->last_runtime;
        if (u == sink) {
            best = std::max(best, acc);
            return;
        }
        for (auto& v : dag.successors(u)) dfs(v, acc);
    };
    dfs(source, 0.0);
    return best;
}

}  // namespace testutil
