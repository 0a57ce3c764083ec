#include <catch2/catch_amalgamated.hpp>

#include "aarc/scheduler.hpp"
#include "helpers.hpp"

using namespace aarc;

TEST_CASE("single-node workflow yields a one-entry config map") {
    auto w = testutil::fixed_runtime_workload({{"A", 9}}, {}, 120.0);
    SimulatedBackend backend;
    auto r = schedule(w.dag, w.profiles, backend, w.pricing, TunerParams{}, 0);
    REQUIRE(r.configs.size() == 1);
    CHECK(r.critical_path.node_ids == std::vector<std::string>{"A"});
    CHECK(r.configs.at("A").mem == 128);  // flat profile descends fully
}

TEST_CASE("diamond detour receives the critical branch runtime as sub-SLO") {
    auto w = testutil::fixed_runtime_workload(
        {{"A", 2}, {"B", 3}, {"C", 5}, {"D", 1}},
        {{"A", "B"}, {"A", "C"}, {"B", "D"}, {"C", "D"}}, 120.0);
    SimulatedBackend backend;

    // Hand-check of the slack computation on the profiled DAG.
    {
        WorkflowDag dag = w.dag;
        for (auto& n : dag.nodes) n.last_runtime = w.profiles.at(n.profile_ref).t0;
        auto critical = find_critical_path(dag);
        REQUIRE(critical.node_ids == std::vector<std::string>{"A", "C", "D"});
        auto subs = find_detour_subpaths(dag, critical);
        REQUIRE(subs.size() == 1);
        bool degenerate = false;
        CHECK(compute_sub_slo(dag, critical, subs[0], degenerate) == 5.0);
        CHECK_FALSE(degenerate);
    }

    auto r = schedule(w.dag, w.profiles, backend, w.pricing, TunerParams{}, 0);
    CHECK(r.configs.size() == 4);  // every node configured exactly once
    CHECK(r.degenerate_subpaths.empty());
    for (auto& [id, cfg] : r.configs) CHECK(cfg.within_bounds());
}

TEST_CASE("sub-SLO clamps to zero when scheduled interiors exceed the interval") {
    auto w = testutil::fixed_runtime_workload(
        {{"A", 1}, {"X", 3}, {"Y", 4}, {"B", 1}},
        {{"A", "X"}, {"A", "Y"}, {"X", "B"}, {"Y", "B"}}, 120.0);
    WorkflowDag dag = w.dag;
    for (auto& n : dag.nodes) n.last_runtime = w.profiles.at(n.profile_ref).t0;
    // Pretend Y was configured on an earlier sub-path with runtime 4.
    dag.find("Y")->scheduled = true;
    Path critical{{"A", "X", "B"}, 5.0};
    SubPath sp{"A", "B", {"Y"}, 0.0};
    bool degenerate = false;
    CHECK(compute_sub_slo(dag, critical, sp, degenerate) == 0.0);
    CHECK(degenerate);
}

TEST_CASE("base-config makespan above the SLO is infeasible") {
    auto w = testutil::fixed_runtime_workload({{"A", 130}}, {}, 120.0);
    SimulatedBackend backend;
    CHECK_THROWS_AS(schedule(w.dag, w.profiles, backend, w.pricing, TunerParams{}, 0),
                    InfeasibleSlo);
}

TEST_CASE("non-positive SLO is infeasible") {
    auto w = testutil::fixed_runtime_workload({{"A", 1}}, {}, 0.0);
    SimulatedBackend backend;
    CHECK_THROWS_AS(schedule(w.dag, w.profiles, backend, w.pricing, TunerParams{}, 0),
                    InfeasibleSlo);
}

TEST_CASE("oom at base config surfaces the failing node") {
    auto w = testutil::fixed_runtime_workload({{"A", 1}, {"B", 1}}, {{"A", "B"}}, 120.0);
    w.profiles["B"].mem_floor = 10240 + 64;  // never satisfiable
    w.profiles["B"].mem_knee = w.profiles["B"].mem_floor;
    SimulatedBackend backend;
    try {
        schedule(w.dag, w.profiles, backend, w.pricing, TunerParams{}, 0);
        FAIL("expected WorkflowExecutionFailed");
    } catch (const WorkflowExecutionFailed& e) {
        CHECK(e.node_id == "B");
    }
}

TEST_CASE("scheduled configs keep the noiseless makespan within the SLO") {
    // Config-sensitive profiles: the search has real SLO pressure.
    Workload w;
    auto prof = [](double t0, double work) {
        FunctionPerfProfile p;
        p.t0 = t0;
        p.cpu_work = work;
        return p;
    };
    w.profiles = {{"src", prof(1, 5)}, {"mid1", prof(2, 40)}, {"mid2", prof(2, 25)},
                  {"dst", prof(1, 10)}};
    for (auto& id : {"src", "mid1", "mid2", "dst"}) {
        FunctionNode n;
        n.id = id;
        n.profile_ref = id;
        w.dag.nodes.push_back(std::move(n));
    }
    w.dag.edges = {{"src", "mid1"}, {"src", "mid2"}, {"mid1", "dst"}, {"mid2", "dst"}};
    w.dag.slo.end_to_end_seconds = 30.0;

    SimulatedBackend backend;
    auto r = schedule(w.dag, w.profiles, backend, w.pricing, TunerParams{}, 1);

    WorkflowDag check = w.dag;
    for (auto& n : check.nodes) n.config = r.configs.at(n.id);
    CHECK(execute_workflow(check, w.profiles, backend, 123) <= 30.0);

    // The accepted configuration is cheaper than the base configuration.
    double base_cost = 0.0, final_cost = 0.0;
    WorkflowDag base = w.dag;
    for (auto& n : base.nodes) n.config = ResourceConfig{10.0, 10240};
    execute_workflow(base, w.profiles, backend, 0);
    for (auto& n : base.nodes) base_cost += function_cost(n.last_runtime, n.config, w.pricing);
    for (auto& n : check.nodes) final_cost += function_cost(n.last_runtime, n.config, w.pricing);
    CHECK(final_cost < base_cost);
}

TEST_CASE("schedule is deterministic for a fixed seed") {
    auto make = [] {
        return testutil::fixed_runtime_workload(
            {{"A", 2}, {"B", 3}, {"C", 5}, {"D", 1}},
            {{"A", "B"}, {"A", "C"}, {"B", "D"}, {"C", "D"}}, 120.0);
    };
    SimulatedBackend backend;
    auto w1 = make();
    auto w2 = make();
    auto r1 = schedule(w1.dag, w1.profiles, backend, w1.pricing, TunerParams{}, 7);
    auto r2 = schedule(w2.dag, w2.profiles, backend, w2.pricing, TunerParams{}, 7);
    CHECK(r1.configs == r2.configs);
    CHECK(r1.trace.records == r2.trace.records);
}
