// Command-line frontend: workload generation, optimization, evaluation,
// method comparison, and input-aware per-class configuration.
//
// Exit codes: 0 success, 2 infeasible SLO, 3 workflow validation error.

#include <cstdlib>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aarc/harness.hpp"

namespace {

#ifndef AARC_DATA_DIR
#define AARC_DATA_DIR "data/templates"
#endif

aarc::WorkloadTemplate resolve_template(const std::string& name, const std::string& file) {
    if (!file.empty()) return aarc::load_template_file(file);
    if (name == "random") {
        aarc::WorkloadTemplate t;
        t.name = "random";
        t.topology = aarc::Topology::RandomDag;
        t.slo_default = 0.0;  // auto: 2x base makespan
        return t;
    }
    return aarc::load_template_file(std::string(AARC_DATA_DIR) + "/" + name + ".json");
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

// Accepts "1..10" ranges and comma-separated lists.
std::vector<std::uint64_t> parse_seeds(const std::string& s) {
    std::vector<std::uint64_t> out;
    for (auto& part : split_csv(s)) {
        auto dots = part.find("..");
        if (dots != std::string::npos) {
            std::uint64_t lo = std::stoull(part.substr(0, dots));
            std::uint64_t hi = std::stoull(part.substr(dots + 2));
            for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            out.push_back(std::stoull(part));
        }
    }
    return out;
}

std::vector<aarc::InputClass> parse_classes(const std::string& s) {
    std::vector<aarc::InputClass> out;
    for (auto& part : split_csv(s)) {
        auto colon = part.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("class spec must be label:scale, got: " + part);
        out.push_back({part.substr(0, colon), std::stod(part.substr(colon + 1))});
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aarc: SLO-aware resource configuration for workflow DAGs"};
    app.require_subcommand(1);
    std::string backend_cmd;
    app.add_option("--backend-cmd", backend_cmd,
                   "run samples through `CMD <cpu> <mem> <seed>` (prints runtime seconds) "
                   "instead of the built-in simulator");

    // ---- gen ----
    std::string gen_template = "random", gen_template_file, gen_out = "workflow.json";
    int gen_fan_out = 0;
    std::uint64_t gen_seed = 0;
    double gen_slo = 0.0;
    auto* gen = app.add_subcommand("gen", "generate a workload file from a template");
    gen->add_option("--template", gen_template, "template name (chatbot|mlpipeline|videoanalysis|random)");
    gen->add_option("--template-file", gen_template_file, "explicit template JSON path");
    gen->add_option("--fan-out", gen_fan_out, "override template fan-out");
    gen->add_option("--seed", gen_seed, "generation seed");
    gen->add_option("--slo", gen_slo, "override SLO seconds");
    gen->add_option("--out", gen_out, "output workflow file");

    // ---- optimize ----
    std::string opt_workflow, opt_method = "aarc", opt_out = "config.json", opt_trace;
    std::uint64_t opt_seed = 0;
    double opt_slo = 0.0;
    aarc::MethodParams opt_params;
    double opt_mu0 = -1.0, opt_mu1 = -1.0, opt_mu2 = -1.0;
    auto* opt = app.add_subcommand("optimize", "search a minimum-cost configuration");
    opt->add_option("--workflow", opt_workflow, "workflow file")->required();
    opt->add_option("--slo", opt_slo, "override SLO seconds");
    opt->add_option("--method", opt_method, "aarc|bo|maff");
    opt->add_option("--seed", opt_seed, "search seed");
    opt->add_option("--out", opt_out, "output config file");
    opt->add_option("--trace", opt_trace, "output trace CSV");
    opt->add_option("--func-trial", opt_params.tuner.func_trial, "per-op retry budget");
    opt->add_option("--max-trail", opt_params.tuner.max_trail, "global sample cap");
    opt->add_option("--step0-cpu", opt_params.tuner.step0_cpu, "initial cpu step (vCPU)");
    opt->add_option("--step0-mem", opt_params.tuner.step0_mem, "initial mem step (MB)");
    opt->add_option("--bo-budget", opt_params.bo.budget, "BO sample budget");
    opt->add_option("--maff-step", opt_params.maff.mem_step, "MAFF memory step (MB)");
    opt->add_option("--mu0", opt_mu0, "fixed price per request");
    opt->add_option("--mu1", opt_mu1, "price per vCPU-second");
    opt->add_option("--mu2", opt_mu2, "price per GB-second");

    // ---- evaluate ----
    std::string eval_workflow, eval_config;
    int eval_runs = 100;
    std::uint64_t eval_seed = 0;
    auto* eval = app.add_subcommand("evaluate", "evaluate a config statistically");
    eval->add_option("--workflow", eval_workflow, "workflow file")->required();
    eval->add_option("--config", eval_config, "config file")->required();
    eval->add_option("--runs", eval_runs, "number of noisy executions");
    eval->add_option("--seed", eval_seed, "evaluation seed");

    // ---- compare ----
    std::string cmp_workflow, cmp_methods = "aarc,bo,maff", cmp_seeds = "1..10", cmp_out;
    double cmp_slo = 0.0;
    int cmp_eval_runs = 100;
    aarc::MethodParams cmp_params;
    auto* cmp = app.add_subcommand("compare", "run several methods over several seeds");
    cmp->add_option("--workflow", cmp_workflow, "workflow file")->required();
    cmp->add_option("--slo", cmp_slo, "override SLO seconds");
    cmp->add_option("--methods", cmp_methods, "comma-separated methods");
    cmp->add_option("--seeds", cmp_seeds, "seed list or lo..hi range");
    cmp->add_option("--eval-runs", cmp_eval_runs, "evaluation runs per result");
    cmp->add_option("--out", cmp_out, "output report file (default stdout)");
    cmp->add_option("--max-trail", cmp_params.tuner.max_trail, "global sample cap");
    cmp->add_option("--bo-budget", cmp_params.bo.budget, "BO sample budget");
    cmp->add_option("--maff-step", cmp_params.maff.mem_step, "MAFF memory step (MB)");

    // ---- input-aware ----
    std::string ia_template = "videoanalysis", ia_template_file,
                ia_classes = "light:0.3,middle:1.0,heavy:3.0", ia_out;
    double ia_slo = 0.0;
    std::uint64_t ia_seed = 0;
    aarc::MethodParams ia_params;
    auto* ia = app.add_subcommand("input-aware", "per-input-class configuration");
    ia->add_option("--template", ia_template, "template name");
    ia->add_option("--template-file", ia_template_file, "explicit template JSON path");
    ia->add_option("--classes", ia_classes, "label:scale,... class list");
    ia->add_option("--slo", ia_slo, "override SLO seconds");
    ia->add_option("--seed", ia_seed, "generation/search seed");
    ia->add_option("--out", ia_out, "output class-config JSON (default stdout)");
    ia->add_option("--max-trail", ia_params.tuner.max_trail, "global sample cap");

    CLI11_PARSE(app, argc, argv);

    aarc::SimulatedBackend sim_backend;
    std::unique_ptr<aarc::ExternalCommandBackend> cmd_backend;
    if (!backend_cmd.empty()) cmd_backend = std::make_unique<aarc::ExternalCommandBackend>(backend_cmd);
    const aarc::ExecutionBackend& backend =
        cmd_backend ? static_cast<const aarc::ExecutionBackend&>(*cmd_backend) : sim_backend;
    try {
        if (gen->parsed()) {
            aarc::WorkloadTemplate t = resolve_template(gen_template, gen_template_file);
            if (gen_fan_out > 0) t.fan_out = gen_fan_out;
            if (gen_slo > 0.0) t.slo_default = gen_slo;
            aarc::Workload w = aarc::generate_workload(t, gen_seed);
            aarc::save_workload(w, gen_out);
            std::cout << "wrote " << gen_out << " (" << w.dag.nodes.size() << " nodes, "
                      << w.dag.edges.size() << " edges, slo " << w.dag.slo.end_to_end_seconds
                      << "s)\n";
        } else if (opt->parsed()) {
            aarc::Workload w = aarc::load_workload(opt_workflow);
            if (opt_slo > 0.0) w.dag.slo.end_to_end_seconds = opt_slo;
            if (opt_mu0 >= 0.0) w.pricing.mu0 = opt_mu0;
            if (opt_mu1 >= 0.0) w.pricing.mu1 = opt_mu1;
            if (opt_mu2 >= 0.0) w.pricing.mu2 = opt_mu2;
            aarc::RunSummary s =
                aarc::run_method(w, opt_method, opt_seed, opt_params, backend, /*rethrow=*/true);
            aarc::save_config_map(s.configs, opt_out);
            if (!opt_trace.empty()) aarc::write_trace_file(opt_trace, s.trace);
            std::cout << "method=" << s.method << " samples=" << s.samples
                      << " sim_time_s=" << s.sim_time << " sampling_cost=" << s.sampling_cost
                      << "\nwrote " << opt_out << '\n';
        } else if (eval->parsed()) {
            aarc::Workload w = aarc::load_workload(eval_workflow);
            aarc::ConfigMap cfg = aarc::load_config_map(eval_config);
            aarc::EvalStats st = aarc::evaluate_config(w, cfg, eval_runs, eval_seed, backend);
            std::cout << "mean_runtime_s=" << st.mean_runtime << " std_runtime_s=" << st.std_runtime
                      << " mean_cost=" << st.mean_cost << " violation_rate=" << st.violation_rate
                      << '\n';
        } else if (cmp->parsed()) {
            aarc::Workload w = aarc::load_workload(cmp_workflow);
            if (cmp_slo > 0.0) w.dag.slo.end_to_end_seconds = cmp_slo;
            auto runs = aarc::run_experiment(w, split_csv(cmp_methods), parse_seeds(cmp_seeds),
                                             cmp_params, backend);
            std::string report = aarc::format_report(w, runs, cmp_eval_runs, backend);
            if (cmp_out.empty()) {
                std::cout << report;
            } else {
                std::ofstream f(cmp_out, std::ios::binary);
                f << report;
                std::cout << "wrote " << cmp_out << '\n';
            }
        } else if (ia->parsed()) {
            aarc::WorkloadTemplate t = resolve_template(ia_template, ia_template_file);
            if (ia_slo > 0.0) t.slo_default = ia_slo;
            aarc::Workload base = aarc::generate_workload(t, ia_seed);
            auto table = aarc::input_aware_optimize(base, parse_classes(ia_classes), ia_params,
                                                    backend, ia_seed);
            nlohmann::json j;
            for (auto& [label, cfg] : table)
                for (auto& [id, c] : cfg) j[label][id] = {{"cpu", c.cpu}, {"mem", c.mem}};
            if (ia_out.empty()) {
                std::cout << j.dump(2) << '\n';
            } else {
                std::ofstream f(ia_out, std::ios::binary);
                f << j.dump(2) << '\n';
                std::cout << "wrote " << ia_out << '\n';
            }
        }
    } catch (const aarc::InfeasibleSlo& e) {
        std::cerr << "infeasible SLO: " << e.what() << '\n';
        return 2;
    } catch (const aarc::ValidationError& e) {
        std::cerr << "invalid workflow: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
