#include <catch2/catch_amalgamated.hpp>

#include "aarc/configurator.hpp"
#include "helpers.hpp"

using namespace aarc;
using testutil::LambdaBackend;
using testutil::RecordingBackend;

namespace {

// Single-node workload with the profiling runtime already recorded.
Workload single_node(double runtime, double slo) {
    auto w = testutil::fixed_runtime_workload({{"A", runtime}}, {}, slo);
    w.dag.find("A")->last_runtime = runtime;
    return w;
}

std::vector<TraceRecord> accepted(const TraceLog& trace) {
    std::vector<TraceRecord> out;
    for (auto& r : trace.records)
        if (r.accepted) out.push_back(r);
    return out;
}

}  // namespace

TEST_CASE("deallocate subtracts and clamps") {
    ResourceConfig c{4.0, 8192};
    CHECK(deallocate({"A", ResourceType::Cpu, 1.0, 3}, c).cpu == 3.0);
    CHECK(deallocate({"A", ResourceType::Mem, 1024.0, 3}, ResourceConfig{1.0, 192}).mem == 128);
    CHECK(deallocate({"A", ResourceType::Cpu, 5.0, 3}, ResourceConfig{0.3, 512}).cpu == 0.1);
}

TEST_CASE("allocate halves the step and spends a retry") {
    TunerParams params;
    auto [s1, t1] = allocate({"A", ResourceType::Mem, 1024.0, 3}, params);
    CHECK(s1 == 512.0);
    CHECK(t1 == 2);
    auto [s2, t2] = allocate({"A", ResourceType::Mem, 512.0, 2}, params);
    CHECK(s2 == 256.0);
    CHECK(t2 == 1);
    auto [s3, t3] = allocate({"A", ResourceType::Cpu, 0.1, 1}, params);
    CHECK(s3 == 0.1);  // floored at granularity
    CHECK(t3 == 0);    // op dropped next time
}

TEST_CASE("empty path yields an empty map and no backend calls") {
    auto w = single_node(9.0, 120.0);
    SimulatedBackend sim;
    RecordingBackend backend(sim);
    TraceLog trace;
    SampleBudget budget{100, 0};
    auto configs = priority_configuration(w.dag, {}, 120.0, w.profiles, backend, w.pricing,
                                          TunerParams{}, 0, trace, budget);
    CHECK(configs.empty());
    CHECK(backend.calls == 0);
    CHECK(trace.records.empty());
}

TEST_CASE("rejected ops revert config and runtime exactly and retire after func_trial") {
    // SLO below the current runtime: every deallocation is rejected.
    auto w = single_node(9.0, 8.0);
    SimulatedBackend sim;
    RecordingBackend backend(sim);
    TraceLog trace;
    SampleBudget budget{100, 0};
    auto configs = priority_configuration(w.dag, {"A"}, 8.0, w.profiles, backend, w.pricing,
                                          TunerParams{}, 0, trace, budget);

    CHECK(configs.at("A") == ResourceConfig{10.0, 10240});
    CHECK(w.dag.find("A")->config == ResourceConfig{10.0, 10240});
    CHECK(w.dag.find("A")->last_runtime == 9.0);

    // Each of the two ops gets exactly func_trial samples.
    CHECK(backend.calls == 6);
    REQUIRE(trace.records.size() == 6);
    for (auto& r : trace.records) CHECK_FALSE(r.accepted);

    // Exponential backoff is visible in the tried configs: step, step/2, step/4.
    std::vector<double> cpu_tried, mem_tried;
    for (auto& r : trace.records) {
        if (r.op_type == "cpu") cpu_tried.push_back(r.cpu);
        if (r.op_type == "mem") mem_tried.push_back(r.mem);
    }
    CHECK(cpu_tried == std::vector<double>{9.0, 9.5, 9.75});
    CHECK(mem_tried == std::vector<double>{9216, 9728, 9984});
}

TEST_CASE("flat profile descends memory to the floor with monotone accepted costs") {
    auto w = single_node(9.0, 120.0);
    SimulatedBackend backend;
    TraceLog trace;
    TunerParams params;
    params.max_trail = 200;
    SampleBudget budget{params.max_trail, 0};
    auto configs = priority_configuration(w.dag, {"A"}, 120.0, w.profiles, backend, w.pricing,
                                          params, 0, trace, budget);

    CHECK(configs.at("A").mem == 128);  // 10240 -> 1024-steps -> exactly mem_floor
    CHECK(configs.at("A").cpu == Catch::Approx(0.1));

    auto acc = accepted(trace);
    REQUIRE(acc.size() >= 2);
    for (std::size_t i = 1; i < acc.size(); ++i) CHECK(acc[i].cost < acc[i - 1].cost);
    CHECK(static_cast<int>(trace.records.size()) <= params.max_trail);
}

TEST_CASE("a runtime cliff is reverted, then refined by halving") {
    auto w = single_node(1.0, 10.0);
    LambdaBackend backend([](const FunctionPerfProfile&, const ResourceConfig& c, std::uint64_t) {
        return ExecutionResult{c.cpu >= 5.0 ? 1.0 : 50.0, true, FailureKind::None};
    });
    TraceLog trace;
    SampleBudget budget{100, 0};
    auto configs = priority_configuration(w.dag, {"A"}, 10.0, w.profiles, backend, w.pricing,
                                          TunerParams{}, 0, trace, budget);

    // Descent stops exactly at the cliff; the config never ends below it.
    CHECK(configs.at("A").cpu == 5.0);
    CHECK(w.dag.find("A")->last_runtime == 1.0);
    CHECK(configs.at("A").mem == 128);  // memory is flat and still descends

    for (auto& r : trace.records)
        if (r.op_type == "cpu" && r.accepted) CHECK(r.cpu >= 5.0);
}

TEST_CASE("sample budget caps total backend calls") {
    auto w = single_node(9.0, 120.0);
    SimulatedBackend sim;
    RecordingBackend backend(sim);
    TraceLog trace;
    TunerParams params;
    params.max_trail = 5;
    SampleBudget budget{params.max_trail, 0};
    priority_configuration(w.dag, {"A"}, 120.0, w.profiles, backend, w.pricing, params, 0, trace,
                           budget);
    CHECK(backend.calls == 5);
    CHECK(trace.records.size() == 5);
    CHECK(budget.exhausted());
}

TEST_CASE("path nodes without a profiling runtime are rejected") {
    auto w = testutil::fixed_runtime_workload({{"A", 2}}, {}, 100.0);
    SimulatedBackend backend;
    TraceLog trace;
    SampleBudget budget{100, 0};
    CHECK_THROWS_AS(priority_configuration(w.dag, {"A"}, 100.0, w.profiles, backend, w.pricing,
                                           TunerParams{}, 0, trace, budget),
                    MissingRuntime);
}
