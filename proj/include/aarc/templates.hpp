#pragma once

// Synthetic workload templates. Named templates (chatbot, mlpipeline,
// videoanalysis) load their profile constants from JSON data files so
// experiments are data, not code; "random" builds a seeded series-parallel
// DAG with generated profiles.
//
// Topologies: scatter = source -> fan_out parallel stages -> sink;
// broadcast = source -> fan_out parallel stages -> join -> tail chain.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aarc/io.hpp"
#include "aarc/perf.hpp"
#include "aarc/rng.hpp"
#include "aarc/workflow.hpp"

namespace aarc {

enum class Topology { Scatter, Broadcast, RandomDag };

struct WorkloadTemplate {
    std::string name;
    Topology topology = Topology::Scatter;
    int fan_out = 3;
    int tail_len = 1;                       // broadcast only
    double slo_default = 120.0;             // <= 0 means auto (x2 base makespan)
    std::map<std::string, FunctionPerfProfile> role_profiles;  // source/stage/sink/join/tail
};

inline Topology topology_from_string(const std::string& s) {
    if (s == "scatter") return Topology::Scatter;
    if (s == "broadcast") return Topology::Broadcast;
    if (s == "random-dag" || s == "random") return Topology::RandomDag;
    throw std::runtime_error("unknown topology: " + s);
}

inline WorkloadTemplate load_template_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open template file: " + path);
    auto j = nlohmann::json::parse(f);
    WorkloadTemplate t;
    t.name = j.at("name").get<std::string>();
    t.topology = topology_from_string(j.at("topology").get<std::string>());
    t.fan_out = j.value("fan_out", 3);
    t.tail_len = j.value("tail_len", 1);
    t.slo_default = j.value("slo_seconds", 120.0);
    for (auto& [role, jp] : j.at("profiles").items()) t.role_profiles[role] = profile_from_json(jp);
    return t;
}

namespace detail {

inline std::string indexed_id(const std::string& base, int i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%02d", base.c_str(), i);
    return buf;
}

// Mild deterministic per-node jitter on the compute parameters, so seeded
// instances of one template differ without changing its affinity class.
inline FunctionPerfProfile jitter(FunctionPerfProfile p, SplitMix& rng) {
    double s = 0.8 + 0.4 * rng.next_double();
    p.t0 *= s;
    p.cpu_work *= s;
    return p;
}

inline void add_node(Workload& w, const std::string& id, const FunctionPerfProfile& p) {
    w.profiles[id] = p;
    FunctionNode n;
    n.id = id;
    n.profile_ref = id;
    w.dag.nodes.push_back(std::move(n));
}

// Overhead-dominated profiles: even at the CPU floor a node's runtime stays
// within ~1.5x its base runtime, so a doubled-base SLO always leaves slack.
inline FunctionPerfProfile random_profile(SplitMix& rng) {
    FunctionPerfProfile p;
    p.t0 = 2.0 + 6.0 * rng.next_double();
    p.cpu_work = p.t0 * (0.02 + 0.03 * rng.next_double());
    p.parallel_cap = kCpuMax;
    if (rng.next_below(2) == 0) {
        // memory-flat node
        p.mem_floor = p.mem_knee = kMemMin;
        p.mem_slowdown = 0.0;
    } else {
        p.mem_floor = 256 + 64 * static_cast<int>(rng.next_below(8));
        p.mem_knee = p.mem_floor + 1024 + 64 * static_cast<int>(rng.next_below(48));
        p.mem_slowdown = 10.0 + 50.0 * rng.next_double();
    }
    return p;
}

}  // namespace detail

inline Workload generate_workload(const WorkloadTemplate& tmpl, std::uint64_t seed) {
    Workload w;
    SplitMix rng(hash_combine(fnv1a(tmpl.name), seed));

    auto role = [&](const std::string& r) -> const FunctionPerfProfile& {
        auto it = tmpl.role_profiles.find(r);
        if (it == tmpl.role_profiles.end())
            throw std::runtime_error("template " + tmpl.name + " missing role profile: " + r);
        return it->second;
    };

    switch (tmpl.topology) {
        case Topology::Scatter: {
            detail::add_node(w, "source", role("source"));
            for (int i = 1; i <= tmpl.fan_out; ++i) {
                std::string id = detail::indexed_id("stage", i);
                detail::add_node(w, id, detail::jitter(role("stage"), rng));
                w.dag.edges.push_back({"source", id});
                w.dag.edges.push_back({id, "sink"});
            }
            detail::add_node(w, "sink", role("sink"));
            break;
        }
        case Topology::Broadcast: {
            detail::add_node(w, "source", role("source"));
            for (int i = 1; i <= tmpl.fan_out; ++i) {
                std::string id = detail::indexed_id("stage", i);
                detail::add_node(w, id, detail::jitter(role("stage"), rng));
                w.dag.edges.push_back({"source", id});
                w.dag.edges.push_back({id, "join"});
            }
            detail::add_node(w, "join", role("join"));
            std::string prev = "join";
            for (int i = 1; i <= tmpl.tail_len; ++i) {
                std::string id = detail::indexed_id("tail", i);
                detail::add_node(w, id, detail::jitter(role("tail"), rng));
                w.dag.edges.push_back({prev, id});
                prev = id;
            }
            break;
        }
        case Topology::RandomDag: {
            // Series-parallel chain of segments: each segment is either one
            // node or a parallel group of short chains between two joints.
            int segments = 2 + static_cast<int>(rng.next_below(3));
            detail::add_node(w, "n00", detail::random_profile(rng));
            std::string prev = "n00";
            int next_id = 1;
            auto fresh = [&]() { return detail::indexed_id("n", next_id++); };
            for (int s = 0; s < segments; ++s) {
                if (rng.next_below(2) == 0) {
                    std::string id = fresh();
                    detail::add_node(w, id, detail::random_profile(rng));
                    w.dag.edges.push_back({prev, id});
                    prev = id;
                } else {
                    int branches = 2 + static_cast<int>(rng.next_below(2));
                    std::string joint = fresh();
                    std::vector<std::string> ends;
                    for (int b = 0; b < branches; ++b) {
                        int len = 1 + static_cast<int>(rng.next_below(2));
                        std::string last = prev;
                        for (int k = 0; k < len; ++k) {
                            std::string id = fresh();
                            detail::add_node(w, id, detail::random_profile(rng));
                            w.dag.edges.push_back({last, id});
                            last = id;
                        }
                        ends.push_back(last);
                    }
                    detail::add_node(w, joint, detail::random_profile(rng));
                    for (auto& e : ends) w.dag.edges.push_back({e, joint});
                    prev = joint;
                }
            }
            break;
        }
    }

    w.dag.slo.end_to_end_seconds = tmpl.slo_default;
    if (tmpl.slo_default <= 0.0) {
        // Auto SLO: twice the noiseless base-config makespan.
        WorkflowDag probe = w.dag;
        for (auto& n : probe.nodes) {
            FunctionPerfProfile p = w.profiles.at(n.profile_ref);
            p.noise_sigma = 0.0;
            n.config = ResourceConfig{kCpuMax, kMemMax};
            n.last_runtime = simulate_runtime(p, n.config, 0).runtime;
        }
        w.dag.slo.end_to_end_seconds = 2.0 * makespan(probe);
    }
    validate_dag_or_throw(w.dag);
    return w;
}

// Input-size class: a multiplier on each profile's divisible compute and
// memory knee.
struct InputClass {
    std::string label;
    double scale = 1.0;
};

inline Workload scale_workload(const Workload& base, double scale) {
    Workload w = base;
    for (auto& [name, p] : w.profiles) {
        p.cpu_work *= scale;
        p.mem_knee = std::clamp(static_cast<int>(std::llround(p.mem_knee * scale)),
                                p.mem_floor, kMemMax);
    }
    return w;
}

}  // namespace aarc
