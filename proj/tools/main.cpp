// main.cpp — pptmc command-line front end.

#include "pptmc/cli.hpp"
#include "pptmc/io.hpp"

#include <CLI11.hpp>

#include <string>

namespace {

void add_shared_options(CLI::App* cmd, pptmc::cli::RunConfig& cfg) {
    cmd->add_option("--dims", cfg.dims,
                    "Subsystem dimensions, e.g. 4 or 2x2x2 (comma list where documented)");
    cmd->add_option("--correlation", cfg.correlation, "Noise correlation: glb, iloc, cloc");
    cmd->add_option("--trace", cfg.trace, "Trace rule: canonical, superlinear, or float list");
    cmd->add_option("--rank", cfg.rank, "Rank rule: full, matched, or int list");
    cmd->add_option("--k", cfg.k, "Unitary strength coefficient");
    cmd->add_option("--samples", cfg.samples, "Number of Monte Carlo samples");
    cmd->add_option("--dx", cfg.dx, "Dimensionless grid step");
    cmd->add_option("--x-max", cfg.x_max, "Censoring horizon");
    cmd->add_option("--method", cfg.method, "Integrator: standard or caolu");
    cmd->add_option("--seed", cfg.seed, "Master seed (64-bit)");
    cmd->add_option("--workers", cfg.workers, "Worker threads (0 = hardware concurrency)");
    cmd->add_option("--out", cfg.out, "Output directory/file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(pptmc::io::kVersion) +
                 " — Monte Carlo PPT-time estimation for random Lindblad dynamics"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read option defaults from a TOML/INI file");
    argv = app.ensure_utf8(argv);

    pptmc::cli::RunConfig cfg_ensemble;
    auto* ensemble = app.add_subcommand("ensemble", "Sample a PPT-time distribution");
    add_shared_options(ensemble, cfg_ensemble);

    pptmc::cli::RunConfig cfg_single;
    auto* single = app.add_subcommand("single", "One generator draw and search");
    add_shared_options(single, cfg_single);
    single->add_option("--preset", cfg_single.preset,
                       "Built-in generator: depolarizing-qubit or dephasing-qubit");
    single->add_option("--generator", cfg_single.generator_file, "Generator JSON file");
    single->add_option("--trace-out", cfg_single.trace_out,
                       "Write the negativity trace (x,negativity CSV) here");

    pptmc::cli::RunConfig cfg_scenarios;
    cfg_scenarios.correlation = "glb,iloc";
    cfg_scenarios.samples = 1000;
    auto* scen = app.add_subcommand("scenarios", "Compare correlation scenarios on one system");
    add_shared_options(scen, cfg_scenarios);

    pptmc::cli::RunConfig cfg_compare;
    cfg_compare.dims = "2,3,4";
    cfg_compare.samples = 50;
    auto* compare = app.add_subcommand("compare-methods",
                                       "Cross-validate and time both integrators");
    add_shared_options(compare, cfg_compare);

    pptmc::cli::RunConfig cfg_fit;
    cfg_fit.dims = "";
    auto* fit = app.add_subcommand("fit", "Summaries and distribution fits for samples.csv");
    fit->add_option("inputs", cfg_fit.inputs, "samples.csv paths")->required();
    fit->add_option("--dims", cfg_fit.dims,
                    "Comma list of dimensions labelling the inputs (enables scaling fits)");
    fit->add_option("--out", cfg_fit.out, "Also write the fit JSON to this file");

    CLI11_PARSE(app, argc, argv);

    if (ensemble->parsed()) {
        return pptmc::cli::cmd_ensemble(cfg_ensemble);
    }
    if (single->parsed()) {
        return pptmc::cli::cmd_single(cfg_single);
    }
    if (scen->parsed()) {
        return pptmc::cli::cmd_scenarios(cfg_scenarios);
    }
    if (compare->parsed()) {
        return pptmc::cli::cmd_compare_methods(cfg_compare);
    }
    if (fit->parsed()) {
        return pptmc::cli::cmd_fit(cfg_fit);
    }
    return 1;
}
