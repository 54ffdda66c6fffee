#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "zdistill/cli.h"

int main(int argc, char **argv) {
    using namespace zdistill;

    CLI::App app{"Exact Z-state distillation planner and verifier"};
    app.require_subcommand(1);

    std::string plan_path;
    std::string report = "text";
    bool oracle = false;
    uint32_t dense_cap = kDenseCap;

    auto *run = app.add_subcommand("run", "Execute a plan document and report exact probabilities");
    run->add_option("plan", plan_path, "Plan document (JSON)")->required();
    run->add_option("--report", report, "Report format")->check(CLI::IsMember({"text", "json"}));
    run->add_flag("--verify-with-oracle", oracle, "Cross-check every cycle with the dense oracle");
    auto *run_cap = run->add_option("--dense-cap", dense_cap, "Largest dense state, in qubits");

    VerifyConfig verify_config;
    auto *verify = app.add_subcommand("verify", "Run the algebra/oracle cross-check sweeps");
    verify->add_option("--max-n", verify_config.max_n, "Largest register width swept");
    verify->add_option("--max-k", verify_config.max_k, "Largest excitation number distilled");
    verify->add_option("--seed", verify_config.seed, "Seed for random permutations and selections");
    verify->add_option("--dense-cap", verify_config.dense_cap, "Largest dense state, in qubits");
    verify->add_flag("--debug-corrupt-alpha", verify_config.corrupt_alpha,
                     "Use unit X0 weights; distillation sweeps must then fail");

    cli::PlanRequest request;
    uint32_t n = 0;
    uint32_t n1 = 0;
    uint32_t n2 = 0;
    auto *plan = app.add_subcommand("plan", "Emit a generated plan document");
    plan->add_option("mode", request.mode, "exact, incremental or exponential")->required();
    plan->add_option("--k", request.k, "Excitation number");
    auto *n_opt = plan->add_option("--n", n, "Target width (incremental, exponential)");
    auto *n1_opt = plan->add_option("--n1", n1, "First input width (exact)");
    auto *n2_opt = plan->add_option("--n2", n2, "Second input width (exact)");
    plan->add_flag("--compact", request.compact, "Emit generator parameters instead of cycles");

    std::string graph_path;
    auto *graph = app.add_subcommand("graph", "Emit the plan as Graphviz DOT");
    graph->add_option("plan", graph_path, "Plan document (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : cli::kBadInput;
    }

    if (*run) {
        cli::RunFlags flags;
        flags.report = report == "json" ? cli::ReportFormat::json : cli::ReportFormat::text;
        flags.verify_with_oracle = oracle;
        if (*run_cap) {
            flags.dense_cap = dense_cap;
        }
        return cli::cmd_run(plan_path, flags, std::cout, std::cerr);
    }
    if (*verify) {
        return cli::cmd_verify(verify_config, std::cout, std::cerr);
    }
    if (*plan) {
        if (*n_opt) request.n = n;
        if (*n1_opt) request.n1 = n1;
        if (*n2_opt) request.n2 = n2;
        return cli::cmd_plan(request, std::cout, std::cerr);
    }
    return cli::cmd_graph(graph_path, std::cout, std::cerr);
}
