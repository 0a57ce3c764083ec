#pragma once

// Workflow and config file formats.
//
// Workflow file (JSON): { "profiles": {name: {t0, cpu_work, parallel_cap,
// mem_floor, mem_knee, mem_slowdown, noise_sigma}}, "nodes": [{id, profile,
// cpu_init?, mem_init?}], "edges": [{from, to}], "slo_seconds": number,
// "pricing": {mu0, mu1, mu2} (optional) }.
//
// Config file (JSON): { node-id: {"cpu": vcpu, "mem": mb} }.

#include <fstream>
#include <string>

#include <json.hpp>

#include "aarc/configurator.hpp"
#include "aarc/cost.hpp"
#include "aarc/perf.hpp"
#include "aarc/workflow.hpp"

namespace aarc {

// A workflow DAG bundled with its profile table and pricing.
struct Workload {
    WorkflowDag dag;
    ProfileTable profiles;
    PricingParams pricing;
};

inline nlohmann::json profile_to_json(const FunctionPerfProfile& p) {
    return {{"t0", p.t0},
            {"cpu_work", p.cpu_work},
            {"parallel_cap", p.parallel_cap},
            {"mem_floor", p.mem_floor},
            {"mem_knee", p.mem_knee},
            {"mem_slowdown", p.mem_slowdown},
            {"noise_sigma", p.noise_sigma}};
}

inline FunctionPerfProfile profile_from_json(const nlohmann::json& j) {
    FunctionPerfProfile p;
    p.t0 = j.value("t0", 0.0);
    p.cpu_work = j.value("cpu_work", 0.0);
    p.parallel_cap = j.value("parallel_cap", kCpuMax);
    p.mem_floor = j.value("mem_floor", kMemMin);
    p.mem_knee = j.value("mem_knee", p.mem_floor);
    p.mem_slowdown = j.value("mem_slowdown", 0.0);
    p.noise_sigma = j.value("noise_sigma", 0.0);
    return p;
}

inline nlohmann::json workload_to_json(const Workload& w) {
    nlohmann::json j;
    for (auto& [name, p] : w.profiles) j["profiles"][name] = profile_to_json(p);
    j["nodes"] = nlohmann::json::array();
    for (auto& n : w.dag.nodes) {
        nlohmann::json jn{{"id", n.id}, {"profile", n.profile_ref}};
        jn["cpu_init"] = n.config.cpu;
        jn["mem_init"] = n.config.mem;
        j["nodes"].push_back(jn);
    }
    j["edges"] = nlohmann::json::array();
    for (auto& e : w.dag.edges) j["edges"].push_back({{"from", e.from}, {"to", e.to}});
    j["slo_seconds"] = w.dag.slo.end_to_end_seconds;
    j["pricing"] = {{"mu0", w.pricing.mu0}, {"mu1", w.pricing.mu1}, {"mu2", w.pricing.mu2}};
    return j;
}

inline Workload workload_from_json(const nlohmann::json& j) {
    Workload w;
    if (j.contains("profiles"))
        for (auto& [name, jp] : j.at("profiles").items()) w.profiles[name] = profile_from_json(jp);
    for (auto& jn : j.at("nodes")) {
        FunctionNode n;
        n.id = jn.at("id").get<std::string>();
        n.profile_ref = jn.value("profile", "");
        n.config.cpu = jn.value("cpu_init", kCpuMax);
        n.config.mem = jn.value("mem_init", kMemMax);
        w.dag.nodes.push_back(std::move(n));
    }
    if (j.contains("edges"))
        for (auto& je : j.at("edges"))
            w.dag.edges.push_back({je.at("from").get<std::string>(), je.at("to").get<std::string>()});
    w.dag.slo.end_to_end_seconds = j.at("slo_seconds").get<double>();
    if (j.contains("pricing")) {
        auto& jp = j.at("pricing");
        w.pricing.mu0 = jp.value("mu0", 0.512);
        w.pricing.mu1 = jp.value("mu1", 0.001);
        w.pricing.mu2 = jp.value("mu2", 0.0);
    }
    for (auto& n : w.dag.nodes)
        if (!w.profiles.count(n.profile_ref))
            throw std::runtime_error("node " + n.id + " references unknown profile: " + n.profile_ref);
    return w;
}

inline void save_workload(const Workload& w, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write workflow file: " + path);
    f << workload_to_json(w).dump(2) << '\n';
}

inline Workload load_workload(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open workflow file: " + path);
    return workload_from_json(nlohmann::json::parse(f));
}

inline void save_config_map(const ConfigMap& configs, const std::string& path) {
    nlohmann::json j;
    for (auto& [id, cfg] : configs) j[id] = {{"cpu", cfg.cpu}, {"mem", cfg.mem}};
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write config file: " + path);
    f << j.dump(2) << '\n';
}

inline ConfigMap load_config_map(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    auto j = nlohmann::json::parse(f);
    ConfigMap m;
    for (auto& [id, jc] : j.items())
        m[id] = ResourceConfig{jc.at("cpu").get<double>(), jc.at("mem").get<int>()};
    return m;
}

}  // namespace aarc
