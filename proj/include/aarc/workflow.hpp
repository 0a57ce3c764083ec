#pragma once

// Workflow DAG types and the path algorithms the scheduler relies on:
// critical path extraction, detour sub-path enumeration, and segment
// runtime sums.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aarc/types.hpp"

namespace aarc {

struct FunctionNode {
    std::string id;
    std::string profile_ref;          // key into the workflow's profile table
    ResourceConfig config;
    double last_runtime = -1.0;       // seconds; < 0 until the node has executed
    bool scheduled = false;
    int invocations = 0;              // feeds per-node seed derivation

    bool has_runtime() const { return last_runtime >= 0.0; }
};

struct Edge {
    std::string from;
    std::string to;
    bool operator==(const Edge&) const = default;
};

struct WorkflowDag {
    std::vector<FunctionNode> nodes;
    std::vector<Edge> edges;
    SloSpec slo;

    FunctionNode* find(const std::string& id) {
        for (auto& n : nodes)
            if (n.id == id) return &n;
        return nullptr;
    }
    const FunctionNode* find(const std::string& id) const {
        for (auto& n : nodes)
            if (n.id == id) return &n;
        return nullptr;
    }

    std::vector<std::string> successors(const std::string& id) const {
        std::vector<std::string> out;
        for (auto& e : edges)
            if (e.from == id) out.push_back(e.to);
        std::sort(out.begin(), out.end());
        return out;
    }
    std::vector<std::string> predecessors(const std::string& id) const {
        std::vector<std::string> out;
        for (auto& e : edges)
            if (e.to == id) out.push_back(e.from);
        std::sort(out.begin(), out.end());
        return out;
    }
};

// Source-to-sink (or segment) path; total_runtime is the sum of member
// last_runtime values.
struct Path {
    std::vector<std::string> node_ids;
    double total_runtime = 0.0;
};

// A detour leaving the critical path at `start` and rejoining at `end`,
// with all interior nodes off the critical path.
struct SubPath {
    std::string start;
    std::string end;
    std::vector<std::string> interior;
    double sub_slo = 0.0;  // filled by the scheduler
};

// ---- Validation ------------------------------------------------------------

// Returns std::nullopt when all DAG invariants hold, otherwise the first
// violated invariant. Check order: duplicate ids, dangling edges / self
// loops, cycle, multi-source, multi-sink.
inline std::optional<ValidationError> validate_dag(const WorkflowDag& dag) {
    using K = ValidationError::Kind;
    if (dag.nodes.empty())
        return ValidationError(K::MultipleSources, "workflow has no nodes");

    std::set<std::string> ids;
    for (auto& n : dag.nodes) {
        if (!ids.insert(n.id).second)
            return ValidationError(K::DuplicateNodeId, "duplicate node id: " + n.id);
    }
    for (auto& e : dag.edges) {
        if (!ids.count(e.from) || !ids.count(e.to))
            return ValidationError(K::DanglingEdge, "edge references unknown node: " + e.from + "->" + e.to);
        if (e.from == e.to)
            return ValidationError(K::CycleDetected, "self loop on node: " + e.from);
    }

    // Kahn's algorithm; leftover nodes mean a cycle.
    std::map<std::string, int> indeg;
    for (auto& n : dag.nodes) indeg[n.id] = 0;
    for (auto& e : dag.edges) ++indeg[e.to];
    std::vector<std::string> ready;
    for (auto& [id, d] : indeg)
        if (d == 0) ready.push_back(id);
    std::size_t seen = 0;
    while (!ready.empty()) {
        std::string u = ready.back();
        ready.pop_back();
        ++seen;
        for (auto& v : dag.successors(u))
            if (--indeg[v] == 0) ready.push_back(v);
    }
    if (seen != dag.nodes.size())
        return ValidationError(K::CycleDetected, "workflow graph contains a cycle");

    int sources = 0, sinks = 0;
    for (auto& n : dag.nodes) {
        if (dag.predecessors(n.id).empty()) ++sources;
        if (dag.successors(n.id).empty()) ++sinks;
    }
    if (sources != 1)
        return ValidationError(K::MultipleSources, "workflow must have exactly one source");
    if (sinks != 1)
        return ValidationError(K::MultipleSinks, "workflow must have exactly one sink");
    return std::nullopt;
}

inline void validate_dag_or_throw(const WorkflowDag& dag) {
    if (auto err = validate_dag(dag)) throw *err;
}

// Deterministic topological order (Kahn with lexicographically smallest
// ready node first). Assumes the DAG already validated.
inline std::vector<std::string> topological_order(const WorkflowDag& dag) {
    std::map<std::string, int> indeg;
    for (auto& n : dag.nodes) indeg[n.id] = 0;
    for (auto& e : dag.edges) ++indeg[e.to];
    std::set<std::string> ready;
    for (auto& [id, d] : indeg)
        if (d == 0) ready.insert(id);
    std::vector<std::string> order;
    order.reserve(dag.nodes.size());
    while (!ready.empty()) {
        std::string u = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(u);
        for (auto& v : dag.successors(u))
            if (--indeg[v] == 0) ready.insert(v);
    }
    return order;
}

inline std::string source_of(const WorkflowDag& dag) {
    for (auto& n : dag.nodes)
        if (dag.predecessors(n.id).empty()) return n.id;
    return {};
}

inline std::string sink_of(const WorkflowDag& dag) {
    for (auto& n : dag.nodes)
        if (dag.successors(n.id).empty()) return n.id;
    return {};
}

// ---- Critical path ---------------------------------------------------------

// Node-weighted longest path from source to sink, weight = last_runtime.
// Ties are broken toward the lexicographically smallest node-id sequence
// so identical inputs always yield identical output.
inline Path find_critical_path(const WorkflowDag& dag) {
    for (auto& n : dag.nodes)
        if (!n.has_runtime()) throw MissingRuntime("node never executed: " + n.id);

    struct Best {
        double weight = 0.0;
        std::vector<std::string> path;
    };
    std::map<std::string, Best> best;
    for (auto& id : topological_order(dag)) {
        const FunctionNode* n = dag.find(id);
        Best b;
        bool first = true;
        for (auto& p : dag.predecessors(id)) {
            const Best& pb = best.at(p);
            if (first || pb.weight > b.weight ||
                (pb.weight == b.weight &&
                 std::lexicographical_compare(pb.path.begin(), pb.path.end(),
                                              b.path.begin(), b.path.end()))) {
                b = pb;
                first = false;
            }
        }
        b.weight += n->last_runtime;
        b.path.push_back(id);
        best[id] = std::move(b);
    }
    const Best& fin = best.at(sink_of(dag));
    return Path{fin.path, fin.weight};
}

// Weight of the heaviest source-to-sink path; the simulated makespan under
// fully parallel branch execution.
inline double makespan(const WorkflowDag& dag) {
    return find_critical_path(dag).total_runtime;
}

// ---- Detour sub-paths ------------------------------------------------------

// Enumerates every maximal directed path that starts on the critical path,
// ends on the critical path, and whose interior nodes all lie off it.
// Returned in (start position on critical path, lexicographic interior ids)
// order. Each returned sub-path is linear by construction; branching
// detours show up as several sub-paths sharing nodes.
inline std::vector<SubPath> find_detour_subpaths(const WorkflowDag& dag, const Path& critical) {
    std::set<std::string> on_cp(critical.node_ids.begin(), critical.node_ids.end());
    std::map<std::string, std::size_t> cp_pos;
    for (std::size_t i = 0; i < critical.node_ids.size(); ++i) cp_pos[critical.node_ids[i]] = i;

    std::vector<SubPath> result;
    std::vector<std::string> interior;

    auto dfs = [&](auto&& self, const std::string& start, const std::string& cur) -> void {
        for (auto& next : dag.successors(cur)) {
            if (on_cp.count(next)) {
                if (!interior.empty()) result.push_back(SubPath{start, next, interior, 0.0});
            } else {
                interior.push_back(next);
                self(self, start, next);
                interior.pop_back();
            }
        }
    };

    for (auto& start : critical.node_ids) {
        for (auto& next : dag.successors(start)) {
            if (on_cp.count(next)) continue;
            interior.assign(1, next);
            dfs(dfs, start, next);
            interior.clear();
        }
    }

    std::sort(result.begin(), result.end(), [&](const SubPath& a, const SubPath& b) {
        if (cp_pos.at(a.start) != cp_pos.at(b.start)) return cp_pos.at(a.start) < cp_pos.at(b.start);
        return a.interior < b.interior;
    });
    return result;
}

// ---- Segment runtime sum ---------------------------------------------------

// Sum of last_runtime over nodes strictly between `start` and `end` on
// `path`. Endpoints are excluded: the interval is the time the path spends
// between the two shared nodes, during which a detour runs in parallel.
inline double runtime_sum(const WorkflowDag& dag, const Path& path,
                          const std::string& start, const std::string& end) {
    auto s = std::find(path.node_ids.begin(), path.node_ids.end(), start);
    auto e = std::find(path.node_ids.begin(), path.node_ids.end(), end);
    if (s == path.node_ids.end()) throw NodeNotOnPath("not on path: " + start);
    if (e == path.node_ids.end()) throw NodeNotOnPath("not on path: " + end);
    if (e < s) throw NodeNotOnPath("start does not precede end: " + start + ".." + end);
    double sum = 0.0;
    for (auto it = s + 1; it < e; ++it) sum += dag.find(*it)->last_runtime;
    return sum;
}

}  // namespace aarc
