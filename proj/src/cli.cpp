// cli.cpp — ensemble / single / scenarios / compare-methods / fit commands.

#include "pptmc/cli.hpp"

#include "pptmc/io.hpp"
#include "pptmc/pptt.hpp"
#include "pptmc/stats.hpp"

#include <json.hpp>

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace pptmc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) {
            parts.push_back(item);
        }
    }
    return parts;
}

void report_progress(int done, int total) {
    static const bool tty = isatty(fileno(stderr)) != 0;
    const int stride = std::max(1, total / (tty ? 50 : 10));
    if (done % stride == 0 || done == total) {
        std::fprintf(stderr, tty ? "\r%d/%d samples" : "%d/%d samples\n", done, total);
        if (tty && done == total) {
            std::fprintf(stderr, "\n");
        }
        std::fflush(stderr);
    }
}

json config_echo(const RunConfig& cfg, const std::string& command) {
    json j;
    j["command"] = command;
    j["dims"] = cfg.dims;
    j["correlation"] = cfg.correlation;
    j["trace"] = cfg.trace;
    j["rank"] = cfg.rank;
    j["k"] = cfg.k;
    j["samples"] = cfg.samples;
    j["dx"] = cfg.dx;
    j["x_max"] = cfg.x_max;
    j["method"] = cfg.method;
    j["seed"] = cfg.seed;
    j["workers"] = cfg.workers;
    j["out"] = cfg.out;
    return j;
}

json sample_set_summary(const scenarios::PpttSampleSet& set) {
    json j;
    const auto values = stats::uncensored_values(set);
    const int censored = static_cast<int>(set.samples.size() - values.size());
    j["stats"] = io::summary_stats_to_json(stats::summarize_values(values, censored));
    const auto mean_ci = stats::bootstrap_ci(values, stats::Statistic::Mean, 1000, 0.95);
    const auto median_ci = stats::bootstrap_ci(values, stats::Statistic::Median, 1000, 0.95);
    j["bootstrap"] = {{"resamples", 1000},
                      {"level", 0.95},
                      {"mean_ci", {mean_ci.first, mean_ci.second}},
                      {"median_ci", {median_ci.first, median_ci.second}}};
    return j;
}

json scenario_metadata(const scenarios::ScenarioSpec& spec, const scenarios::PpttSampleSet& set) {
    json meta;
    meta["fast_path"] = set.fast_path;
    meta["subsystem_dims"] = spec.subsystem_dims;
    if (spec.correlation == scenarios::Correlation::Glb) {
        meta["trace_target"] = scenarios::global_trace_target(spec);
        meta["rank_bound"] = scenarios::global_rank_bound(spec);
    } else {
        json blocks = json::array();
        double embedded_trace = 0.0;
        const int total = scenarios::total_dim(spec);
        for (std::size_t b = 0; b < spec.subsystem_dims.size(); ++b) {
            const double xi = scenarios::block_trace_target(spec, static_cast<int>(b));
            blocks.push_back({{"dim", spec.subsystem_dims[b]},
                              {"trace_target", xi},
                              {"rank_bound", scenarios::block_rank_bound(spec, static_cast<int>(b))}});
            embedded_trace += xi * total / spec.subsystem_dims[b];
        }
        meta["blocks"] = blocks;
        meta["embedded_trace"] = embedded_trace;
    }
    return meta;
}

struct OutputGuard {
    std::vector<fs::path> created;
    bool committed{false};
    ~OutputGuard() {
        if (committed) {
            return;
        }
        for (const auto& path : created) {
            std::error_code ec;
            fs::remove(path, ec);
        }
    }
};

}  // namespace

std::vector<int> parse_dims_group(const std::string& text) {
    std::vector<int> dims;
    for (const auto& part : split(text, 'x')) {
        int value = 0;
        try {
            value = std::stoi(part);
        } catch (const std::exception&) {
            throw std::invalid_argument("--dims: cannot parse '" + part + "'");
        }
        dims.push_back(value);
    }
    if (dims.empty()) {
        throw std::invalid_argument("--dims: empty specification");
    }
    return dims;
}

std::vector<std::vector<int>> parse_dims_list(const std::string& text) {
    std::vector<std::vector<int>> groups;
    for (const auto& part : split(text, ',')) {
        groups.push_back(parse_dims_group(part));
    }
    if (groups.empty()) {
        throw std::invalid_argument("--dims: empty specification");
    }
    return groups;
}

scenarios::Correlation parse_correlation(const std::string& text) {
    if (text == "glb") return scenarios::Correlation::Glb;
    if (text == "iloc") return scenarios::Correlation::Iloc;
    if (text == "cloc") return scenarios::Correlation::Cloc;
    throw std::invalid_argument("--correlation must be one of glb, iloc, cloc");
}

propagators::Method parse_method(const std::string& text) {
    if (text == "standard") return propagators::Method::Standard;
    if (text == "caolu") return propagators::Method::CaoLu;
    throw std::invalid_argument("--method must be standard or caolu");
}

scenarios::ScenarioSpec make_spec(const RunConfig& cfg, const std::vector<int>& dims_group,
                                  scenarios::Correlation correlation) {
    scenarios::ScenarioSpec spec;
    spec.subsystem_dims = dims_group;
    spec.correlation = correlation;
    spec.k = cfg.k;
    spec.gamma = 1.0;

    if (cfg.trace == "canonical") {
        spec.trace_rule = scenarios::TraceRule::Canonical;
    } else if (cfg.trace == "superlinear") {
        spec.trace_rule = scenarios::TraceRule::SuperLinear;
    } else {
        spec.trace_rule = scenarios::TraceRule::Explicit;
        for (const auto& part : split(cfg.trace, ',')) {
            try {
                spec.trace_values.push_back(std::stod(part));
            } catch (const std::exception&) {
                throw std::invalid_argument("--trace: cannot parse '" + part + "'");
            }
        }
    }

    if (cfg.rank == "full") {
        spec.rank_rule = scenarios::RankRule::Full;
    } else if (cfg.rank == "matched") {
        // the matched-rank condition constrains the global draw; the local
        // scenarios it is compared against use their full local ranks
        spec.rank_rule = correlation == scenarios::Correlation::Glb
                             ? scenarios::RankRule::Matched
                             : scenarios::RankRule::Full;
    } else {
        spec.rank_rule = scenarios::RankRule::Explicit;
        for (const auto& part : split(cfg.rank, ',')) {
            try {
                spec.rank_values.push_back(std::stoi(part));
            } catch (const std::exception&) {
                throw std::invalid_argument("--rank: cannot parse '" + part + "'");
            }
        }
    }

    scenarios::validate(spec);
    return spec;
}

propagators::PropagatorConfig make_propagator_config(const RunConfig& cfg) {
    propagators::PropagatorConfig pcfg;
    pcfg.method = parse_method(cfg.method);
    pcfg.dx = cfg.dx;
    pcfg.x_max = cfg.x_max;
    propagators::validate(pcfg);
    return pcfg;
}

int cmd_ensemble(const RunConfig& cfg) {
    OutputGuard guard;
    try {
        if (cfg.out.empty()) {
            throw std::invalid_argument("ensemble: --out directory is required");
        }
        const auto groups = parse_dims_list(cfg.dims);
        if (groups.size() != 1) {
            throw std::invalid_argument("ensemble: --dims must be a single group (e.g. 4 or 2x2)");
        }
        const auto spec = make_spec(cfg, groups.front(), parse_correlation(cfg.correlation));
        const auto pcfg = make_propagator_config(cfg);

        fs::create_directories(cfg.out);
        const fs::path csv_path = fs::path(cfg.out) / "samples.csv";
        const fs::path summary_path = fs::path(cfg.out) / "summary.json";
        guard.created = {csv_path, summary_path};

        const auto set = scenarios::run_ensemble(spec, cfg.samples, pcfg, cfg.seed, cfg.workers,
                                                 /*allow_fast_path=*/true, report_progress);

        io::write_samples_csv(csv_path, set);

        json summary;
        summary["version"] = io::kVersion;
        summary["config"] = config_echo(cfg, "ensemble");
        summary["grid"] = {{"dx", set.dx}, {"x_max", set.x_max}};
        summary["master_seed"] = set.master_seed;
        summary["scenario"] = io::spec_to_json(spec);
        summary["metadata"] = scenario_metadata(spec, set);
        summary.update(sample_set_summary(set));
        std::ofstream out(summary_path, std::ios::binary);
        out << summary.dump(2) << "\n";
        if (!out) {
            throw std::runtime_error("ensemble: failed writing " + summary_path.string());
        }
        guard.committed = true;
        std::cout << summary_path.string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_single(const RunConfig& cfg) {
    try {
        const auto pcfg = make_propagator_config(cfg);
        gksl::GkslGenerator gen;
        json provenance;
        if (!cfg.preset.empty()) {
            if (cfg.preset == "depolarizing-qubit") {
                gen = gksl::depolarizing_qubit();
            } else if (cfg.preset == "dephasing-qubit") {
                gen = gksl::dephasing_qubit();
            } else {
                throw std::invalid_argument("single: unknown preset '" + cfg.preset + "'");
            }
            provenance["preset"] = cfg.preset;
        } else if (!cfg.generator_file.empty()) {
            std::ifstream in(cfg.generator_file);
            if (!in) {
                throw std::runtime_error("single: cannot open " + cfg.generator_file);
            }
            json j;
            try {
                in >> j;
            } catch (const json::exception& e) {
                throw std::runtime_error("single: malformed generator file: " +
                                         std::string(e.what()));
            }
            gen = io::generator_from_json(j);
            provenance["generator_file"] = cfg.generator_file;
        } else {
            const auto groups = parse_dims_list(cfg.dims);
            if (groups.size() != 1) {
                throw std::invalid_argument("single: --dims must be a single group");
            }
            const auto spec = make_spec(cfg, groups.front(), parse_correlation(cfg.correlation));
            ensembles::RngStream rng(cfg.seed);  // raw stream key, as in samples.csv
            gen = scenarios::draw_generator(spec, rng);
            provenance["seed"] = cfg.seed;
            provenance["scenario"] = io::spec_to_json(spec);
        }

        const bool record_trace = !cfg.trace_out.empty();
        const auto result = pptt::pptt_search(gen, pcfg, record_trace);

        if (record_trace) {
            std::ofstream trace(cfg.trace_out, std::ios::binary);
            if (!trace) {
                throw std::runtime_error("single: cannot open " + cfg.trace_out);
            }
            trace << "x,negativity\n";
            for (const auto& [x, neg] : result.negativity_trace) {
                trace << io::format_double(x) << ',' << io::format_double(neg) << '\n';
            }
        }

        json out;
        out["version"] = io::kVersion;
        out["x_ppt"] = result.x_ppt;
        out["censored"] = result.censored;
        out["method"] = cfg.method;
        out["dx"] = cfg.dx;
        out["x_max"] = cfg.x_max;
        out["provenance"] = provenance;
        std::cout << out.dump(2) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

namespace {

// Percentile bootstrap on the difference of medians of two independent sets.
std::pair<double, double> median_difference_ci(const std::vector<double>& a,
                                               const std::vector<double>& b, int resamples,
                                               std::uint64_t seed) {
    ensembles::RngStream rng(seed, 1);
    std::vector<double> diffs;
    diffs.reserve(resamples);
    std::vector<double> ra(a.size());
    std::vector<double> rb(b.size());
    for (int it = 0; it < resamples; ++it) {
        for (auto& v : ra) {
            v = a[rng.next_u64() % a.size()];
        }
        for (auto& v : rb) {
            v = b[rng.next_u64() % b.size()];
        }
        diffs.push_back(stats::evaluate_statistic(stats::Statistic::Median, ra) -
                        stats::evaluate_statistic(stats::Statistic::Median, rb));
    }
    std::sort(diffs.begin(), diffs.end());
    const auto at = [&](double q) {
        const double pos = q * (diffs.size() - 1.0);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const double frac = pos - lo;
        return lo + 1 < diffs.size() ? diffs[lo] * (1 - frac) + diffs[lo + 1] * frac
                                     : diffs.back();
    };
    return {at(0.025), at(0.975)};
}

}  // namespace

int cmd_scenarios(const RunConfig& cfg) {
    try {
        if (cfg.out.empty()) {
            throw std::invalid_argument("scenarios: --out directory is required");
        }
        const auto groups = parse_dims_list(cfg.dims);
        if (groups.size() != 1) {
            throw std::invalid_argument("scenarios: --dims must be a single composite group");
        }
        const auto labels = split(cfg.correlation, ',');
        if (labels.empty()) {
            throw std::invalid_argument("scenarios: --correlation list is empty");
        }
        const auto pcfg = make_propagator_config(cfg);

        std::vector<std::string> names;
        std::vector<scenarios::PpttSampleSet> sets;
        for (const auto& label : labels) {
            const auto correlation = parse_correlation(label);
            const auto spec = make_spec(cfg, groups.front(), correlation);
            std::fprintf(stderr, "scenario %s:\n", label.c_str());
            auto set = scenarios::run_ensemble(spec, cfg.samples, pcfg, cfg.seed, cfg.workers,
                                               true, report_progress);
            const fs::path dir = fs::path(cfg.out) / label;
            fs::create_directories(dir);
            io::write_samples_csv(dir / "samples.csv", set);
            json summary;
            summary["version"] = io::kVersion;
            summary["config"] = config_echo(cfg, "scenarios");
            summary["scenario"] = io::spec_to_json(spec);
            summary["grid"] = {{"dx", set.dx}, {"x_max", set.x_max}};
            summary["master_seed"] = set.master_seed;
            summary["metadata"] = scenario_metadata(spec, set);
            summary.update(sample_set_summary(set));
            std::ofstream out(dir / "summary.json", std::ios::binary);
            out << summary.dump(2) << "\n";
            names.push_back(label);
            sets.push_back(std::move(set));
        }

        json comparison;
        comparison["version"] = io::kVersion;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            const auto values = stats::uncensored_values(sets[i]);
            const auto ci = stats::bootstrap_ci(values, stats::Statistic::Median, 1000, 0.95);
            comparison["medians"][names[i]] = {
                {"median", stats::evaluate_statistic(stats::Statistic::Median, values)},
                {"ci95", {ci.first, ci.second}}};
        }
        for (std::size_t i = 0; i < sets.size(); ++i) {
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                const auto va = stats::uncensored_values(sets[i]);
                const auto vb = stats::uncensored_values(sets[j]);
                const std::string key = names[i] + "_minus_" + names[j];
                const double diff = stats::evaluate_statistic(stats::Statistic::Median, va) -
                                    stats::evaluate_statistic(stats::Statistic::Median, vb);
                const auto ci = median_difference_ci(va, vb, 1000, cfg.seed);
                comparison["median_differences"][key] = {{"difference", diff},
                                                         {"ci95", {ci.first, ci.second}}};
                comparison["ks_distances"][names[i] + "_vs_" + names[j]] =
                    stats::ks_distance(stats::Ecdf(va), stats::Ecdf(vb));
            }
        }
        const fs::path cmp_path = fs::path(cfg.out) / "comparison.json";
        std::ofstream out(cmp_path, std::ios::binary);
        out << comparison.dump(2) << "\n";
        if (!out) {
            throw std::runtime_error("scenarios: failed writing " + cmp_path.string());
        }
        std::cout << cmp_path.string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_compare_methods(const RunConfig& cfg) {
    try {
        const auto groups = parse_dims_list(cfg.dims);
        const auto correlation = parse_correlation(cfg.correlation);
        propagators::PropagatorConfig pcfg = make_propagator_config(cfg);

        json report;
        report["version"] = io::kVersion;
        report["config"] = config_echo(cfg, "compare-methods");
        report["timed_section"] = "pptt_search per sample (generator draw excluded)";
        json per_dim = json::array();

        std::vector<std::pair<int, double>> time_standard;
        std::vector<std::pair<int, double>> time_caolu;

        for (const auto& group : groups) {
            const auto spec = make_spec(cfg, group, correlation);
            const int dim = scenarios::total_dim(spec);
            double max_delta = 0.0;
            double sum_standard = 0.0;
            double sum_caolu = 0.0;
            int censored = 0;
            for (int i = 0; i < cfg.samples; ++i) {
                ensembles::RngStream rng(cfg.seed, static_cast<std::uint64_t>(i));
                const auto gen = scenarios::draw_generator(spec, rng);

                pcfg.method = propagators::Method::Standard;
                auto t0 = std::chrono::steady_clock::now();
                const auto res_std = pptt::pptt_search(gen, pcfg);
                auto t1 = std::chrono::steady_clock::now();
                pcfg.method = propagators::Method::CaoLu;
                const auto res_cl = pptt::pptt_search(gen, pcfg);
                auto t2 = std::chrono::steady_clock::now();

                sum_standard += std::chrono::duration<double>(t1 - t0).count();
                sum_caolu += std::chrono::duration<double>(t2 - t1).count();
                if (res_std.censored || res_cl.censored) {
                    ++censored;
                } else {
                    max_delta = std::max(max_delta, std::abs(res_std.x_ppt - res_cl.x_ppt));
                }
                report_progress(i + 1, cfg.samples);
            }
            const double mean_standard = sum_standard / cfg.samples;
            const double mean_caolu = sum_caolu / cfg.samples;
            per_dim.push_back({{"dims", group},
                               {"D", dim},
                               {"samples", cfg.samples},
                               {"censored", censored},
                               {"max_abs_delta_xppt", max_delta},
                               {"seconds_per_sample_standard", mean_standard},
                               {"seconds_per_sample_caolu", mean_caolu}});
            time_standard.emplace_back(dim, mean_standard);
            time_caolu.emplace_back(dim, mean_caolu);
            std::fprintf(stderr, "D=%d done\n", dim);
        }
        report["per_dim"] = per_dim;

        auto fit_theta1 = [](const std::vector<std::pair<int, double>>& times) {
            double num = 0.0;
            double den = 0.0;
            for (const auto& [dim, t] : times) {
                const double d6 = std::pow(static_cast<double>(dim), 6.0);
                num += t * d6;
                den += d6 * d6;
            }
            return num / den;
        };
        auto fit_slope = [](const std::vector<std::pair<int, double>>& times) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            const double n = static_cast<double>(times.size());
            for (const auto& [dim, t] : times) {
                const double x = std::log(static_cast<double>(dim));
                const double y = std::log(std::max(t, 1e-12));
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            return (n * sxy - sx * sy) / (n * sxx - sx * sx);
        };

        report["fit"] = {
            {"model", "T(D) = theta1 * D^6"},
            {"theta1_standard", fit_theta1(time_standard)},
            {"theta1_caolu", fit_theta1(time_caolu)},
            {"loglog_slope_standard", groups.size() >= 2 ? fit_slope(time_standard) : 0.0},
            {"loglog_slope_caolu", groups.size() >= 2 ? fit_slope(time_caolu) : 0.0},
            {"winner", nullptr},
            {"note", "prefactors are hardware dependent; no winner is asserted"}};

        const std::string text = report.dump(2) + "\n";
        if (!cfg.out.empty()) {
            fs::path out_path(cfg.out);
            if (!out_path.has_extension()) {
                fs::create_directories(out_path);
                out_path /= "compare_methods.json";
            } else if (out_path.has_parent_path()) {
                fs::create_directories(out_path.parent_path());
            }
            std::ofstream out(out_path, std::ios::binary);
            out << text;
            if (!out) {
                throw std::runtime_error("compare-methods: failed writing " + out_path.string());
            }
            std::cout << out_path.string() << "\n";
        } else {
            std::cout << text;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_fit(const RunConfig& cfg) {
    try {
        if (cfg.inputs.empty()) {
            throw std::invalid_argument("fit: at least one samples.csv path is required");
        }
        std::vector<int> dim_labels;
        if (!cfg.dims.empty()) {
            for (const auto& group : parse_dims_list(cfg.dims)) {
                int d = 1;
                for (int v : group) {
                    d *= v;
                }
                dim_labels.push_back(d);
            }
            if (dim_labels.size() != cfg.inputs.size()) {
                throw std::invalid_argument("fit: --dims labels must match the number of inputs");
            }
        }

        json out;
        out["version"] = io::kVersion;
        json per_file = json::array();
        std::vector<std::pair<int, double>> means;
        std::vector<std::pair<int, double>> medians;
        std::vector<std::pair<int, double>> mins;
        std::vector<std::pair<int, double>> stdevs;

        for (std::size_t f = 0; f < cfg.inputs.size(); ++f) {
            const auto set = io::read_samples_csv(cfg.inputs[f]);
            const auto values = stats::uncensored_values(set);
            const int censored = static_cast<int>(set.samples.size() - values.size());
            json entry;
            entry["input"] = cfg.inputs[f];
            const auto summary = stats::summarize_values(values, censored);
            entry["stats"] = io::summary_stats_to_json(summary);
            const auto mean_ci = stats::bootstrap_ci(values, stats::Statistic::Mean, 1000, 0.95);
            const auto median_ci =
                stats::bootstrap_ci(values, stats::Statistic::Median, 1000, 0.95);
            entry["bootstrap_cis"] = {{"mean_ci", {mean_ci.first, mean_ci.second}},
                                      {"median_ci", {median_ci.first, median_ci.second}}};
            if (values.size() >= 50) {
                entry["gamma3"] = io::gamma_fit_to_json(stats::fit_gamma3(values));
                entry["lognormal3"] = io::lognormal_fit_to_json(stats::fit_lognormal3(values));
            } else {
                entry["gamma3"] = nullptr;
                entry["lognormal3"] = nullptr;
                entry["fit_note"] = "fewer than 50 uncensored samples; fits skipped";
            }
            if (!dim_labels.empty()) {
                const int dim = dim_labels[f];
                entry["D"] = dim;
                means.emplace_back(dim, summary.mean);
                medians.emplace_back(dim, summary.median);
                mins.emplace_back(dim, summary.min);
                stdevs.emplace_back(dim, summary.stdev);
            }
            per_file.push_back(std::move(entry));
        }
        out["fits"] = per_file;

        if (means.size() >= 2) {
            out["scaling_fits"] = {
                {"model_times", "value = log2(theta * D)"},
                {"model_stdev", "value = theta / D"},
                {"theta_mean", stats::fit_log_scaling(means)},
                {"theta_median", stats::fit_log_scaling(medians)},
                {"theta_min", stats::fit_log_scaling(mins)},
                {"theta_stdev", stats::fit_inverse_scaling(stdevs)},
                {"note", "informational only"}};
        }

        const std::string text = out.dump(2) + "\n";
        if (!cfg.out.empty()) {
            std::ofstream file(cfg.out, std::ios::binary);
            file << text;
            if (!file) {
                throw std::runtime_error("fit: failed writing " + cfg.out);
            }
        }
        std::cout << text;
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace pptmc::cli
