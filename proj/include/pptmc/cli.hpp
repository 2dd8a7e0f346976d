// cli.hpp — Command implementations behind the pptmc executable. Kept in the
// library so they can be driven in-process by tests.

#pragma once

#include "pptmc/propagators.hpp"
#include "pptmc/scenarios.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pptmc::cli {

struct RunConfig {
    // shared flags
    std::string dims{"2"};             // "4", "2x2x2"; comma list for compare-methods/fit labels
    std::string correlation{"glb"};    // comma list allowed for `scenarios`
    std::string trace{"canonical"};    // canonical | superlinear | comma floats
    std::string rank{"full"};          // full | matched | comma ints
    double k{0.0};
    int samples{2000};
    double dx{1e-3};
    double x_max{10.0};
    std::string method{"caolu"};       // standard | caolu
    std::uint64_t seed{0};
    int workers{0};                    // 0 = hardware concurrency
    std::string out;

    // single
    std::string preset;                // depolarizing-qubit | dephasing-qubit
    std::string generator_file;
    std::string trace_out;

    // fit
    std::vector<std::string> inputs;
};

std::vector<int> parse_dims_group(const std::string& text);
std::vector<std::vector<int>> parse_dims_list(const std::string& text);
scenarios::Correlation parse_correlation(const std::string& text);
propagators::Method parse_method(const std::string& text);

scenarios::ScenarioSpec make_spec(const RunConfig& cfg, const std::vector<int>& dims_group,
                                  scenarios::Correlation correlation);
propagators::PropagatorConfig make_propagator_config(const RunConfig& cfg);

int cmd_ensemble(const RunConfig& cfg);
int cmd_single(const RunConfig& cfg);
int cmd_scenarios(const RunConfig& cfg);
int cmd_compare_methods(const RunConfig& cfg);
int cmd_fit(const RunConfig& cfg);

}  // namespace pptmc::cli
