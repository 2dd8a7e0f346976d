// scenarios.cpp — Scenario sampling rules and the parallel ensemble runner.

#include "pptmc/scenarios.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace pptmc::scenarios {

int total_dim(const ScenarioSpec& spec) {
    int d = 1;
    for (int dim : spec.subsystem_dims) {
        d *= dim;
    }
    return d;
}

void validate(const ScenarioSpec& spec) {
    if (spec.subsystem_dims.empty()) {
        throw std::invalid_argument("ScenarioSpec: no subsystem dimensions");
    }
    for (int d : spec.subsystem_dims) {
        if (d < 2) {
            throw std::invalid_argument("ScenarioSpec: subsystem dimensions must be >= 2");
        }
    }
    if (spec.correlation == Correlation::Cloc) {
        for (int d : spec.subsystem_dims) {
            if (d != spec.subsystem_dims.front()) {
                throw std::invalid_argument(
                    "ScenarioSpec: cLOC requires isomorphic subsystems (equal dims)");
            }
        }
    }
    if (spec.trace_rule == TraceRule::Explicit) {
        const std::size_t expected =
            spec.correlation == Correlation::Glb ? 1 : spec.subsystem_dims.size();
        if (spec.trace_values.size() != expected) {
            throw std::invalid_argument("ScenarioSpec: wrong number of explicit trace values");
        }
        for (double xi : spec.trace_values) {
            if (!(xi > 0.0)) {
                throw std::invalid_argument("ScenarioSpec: trace values must be positive");
            }
        }
    }
    if (spec.rank_rule == RankRule::Explicit) {
        const std::size_t expected =
            spec.correlation == Correlation::Glb ? 1 : spec.subsystem_dims.size();
        if (spec.rank_values.size() != expected) {
            throw std::invalid_argument("ScenarioSpec: wrong number of explicit rank values");
        }
    }
    if (spec.rank_rule == RankRule::Matched && spec.correlation != Correlation::Glb) {
        throw std::invalid_argument("ScenarioSpec: matched rank only applies to the GLB draw");
    }
    if (!(spec.gamma > 0.0)) {
        throw std::invalid_argument("ScenarioSpec: gamma must be positive");
    }
}

namespace {

double trace_for_dim(TraceRule rule, int dim, const std::vector<double>& values, int index) {
    switch (rule) {
        case TraceRule::Canonical:
            return static_cast<double>(dim);
        case TraceRule::SuperLinear:
            return dim * std::log2(static_cast<double>(dim));
        case TraceRule::Explicit:
            return values.at(index);
    }
    throw std::logic_error("trace_for_dim: unreachable");
}

}  // namespace

double block_trace_target(const ScenarioSpec& spec, int block) {
    return trace_for_dim(spec.trace_rule, spec.subsystem_dims.at(block), spec.trace_values,
                         block);
}

double global_trace_target(const ScenarioSpec& spec) {
    return trace_for_dim(spec.trace_rule, total_dim(spec), spec.trace_values, 0);
}

int block_rank_bound(const ScenarioSpec& spec, int block) {
    const int d = spec.subsystem_dims.at(block);
    switch (spec.rank_rule) {
        case RankRule::Full:
        case RankRule::Matched:
            return d * d - 1;
        case RankRule::Explicit:
            return spec.rank_values.at(block);
    }
    throw std::logic_error("block_rank_bound: unreachable");
}

int global_rank_bound(const ScenarioSpec& spec) {
    const int d = total_dim(spec);
    switch (spec.rank_rule) {
        case RankRule::Full:
            return d * d - 1;
        case RankRule::Matched: {
            int r = 0;
            for (int dj : spec.subsystem_dims) {
                r += dj * dj - 1;
            }
            return r;
        }
        case RankRule::Explicit:
            return spec.rank_values.at(0);
    }
    throw std::logic_error("global_rank_bound: unreachable");
}

namespace {

std::vector<ensembles::KossakowskiMatrix> draw_blocks(const ScenarioSpec& spec,
                                                      ensembles::RngStream& rng) {
    const int n = static_cast<int>(spec.subsystem_dims.size());
    std::vector<ensembles::KossakowskiMatrix> blocks;
    blocks.reserve(n);
    if (spec.correlation == Correlation::Cloc) {
        const auto k1 = ensembles::sample_kossakowski(
            spec.subsystem_dims[0], block_trace_target(spec, 0), block_rank_bound(spec, 0), rng);
        for (int j = 0; j < n; ++j) {
            blocks.push_back(k1);
        }
    } else {
        for (int j = 0; j < n; ++j) {
            blocks.push_back(ensembles::sample_kossakowski(spec.subsystem_dims[j],
                                                           block_trace_target(spec, j),
                                                           block_rank_bound(spec, j), rng));
        }
    }
    return blocks;
}

}  // namespace

gksl::GkslGenerator draw_generator(const ScenarioSpec& spec, ensembles::RngStream& rng) {
    validate(spec);
    const int dim = total_dim(spec);

    if (spec.correlation == Correlation::Glb) {
        auto kossakowski = ensembles::sample_kossakowski(dim, global_trace_target(spec),
                                                         global_rank_bound(spec), rng);
        linalg::Matrix h;
        if (spec.k != 0.0) {
            h = ensembles::sample_gue_hamiltonian(dim, rng);
        }
        return gksl::make_generator(spec.gamma, spec.k, std::move(h), std::move(kossakowski),
                                    linalg::gell_mann_basis(dim));
    }

    gksl::LocalNoiseLayout layout;
    layout.subsystem_dims = spec.subsystem_dims;
    layout.blocks = draw_blocks(spec, rng);
    std::vector<linalg::OperatorBasis> local_bases;
    local_bases.reserve(layout.subsystem_dims.size());
    for (int d : layout.subsystem_dims) {
        local_bases.push_back(linalg::gell_mann_basis(d));
    }
    auto kossakowski = gksl::embed_local_dissipators(layout, local_bases);
    linalg::Matrix h;
    if (spec.k != 0.0) {
        h = ensembles::sample_gue_hamiltonian(dim, rng);
    }
    return gksl::make_generator(spec.gamma, spec.k, std::move(h), std::move(kossakowski),
                                gksl::product_basis(local_bases), spec.subsystem_dims);
}

std::vector<gksl::GkslGenerator> draw_block_generators(const ScenarioSpec& spec,
                                                       ensembles::RngStream& rng) {
    validate(spec);
    if (spec.correlation == Correlation::Glb) {
        throw std::invalid_argument("draw_block_generators: GLB has no block decomposition");
    }
    if (spec.k != 0.0) {
        throw std::invalid_argument(
            "draw_block_generators: a full-space Hamiltonian breaks the product structure");
    }
    auto blocks = draw_blocks(spec, rng);
    std::vector<gksl::GkslGenerator> generators;
    generators.reserve(blocks.size());
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        generators.push_back(gksl::make_generator(
            spec.gamma, 0.0, linalg::Matrix(), std::move(blocks[j]),
            linalg::gell_mann_basis(spec.subsystem_dims[j])));
    }
    return generators;
}

pptt::PpttResult compose_pptt_iloc(const std::vector<pptt::PpttResult>& block_times) {
    if (block_times.empty()) {
        throw std::invalid_argument("compose_pptt_iloc: empty block list");
    }
    pptt::PpttResult out;
    out.x_ppt = 0.0;
    for (const auto& block : block_times) {
        out.censored = out.censored || block.censored;
        out.x_ppt = std::max(out.x_ppt, block.x_ppt);
    }
    return out;
}

namespace {

PpttSample run_one_sample(const ScenarioSpec& spec, const propagators::PropagatorConfig& cfg,
                          std::uint64_t master_seed, std::uint64_t index, bool fast_path) {
    ensembles::RngStream rng(master_seed, index);
    PpttSample sample;
    sample.stream_index = index;
    sample.seed_key = rng.key();

    pptt::PpttResult result;
    if (fast_path) {
        const auto blocks = draw_block_generators(spec, rng);
        if (spec.correlation == Correlation::Cloc) {
            // Identical blocks: the composite becomes PPT with its first block.
            result = pptt::pptt_search(blocks.front(), cfg);
        } else {
            std::vector<pptt::PpttResult> block_results;
            block_results.reserve(blocks.size());
            for (const auto& gen : blocks) {
                block_results.push_back(pptt::pptt_search(gen, cfg));
            }
            result = compose_pptt_iloc(block_results);
        }
    } else {
        const auto gen = draw_generator(spec, rng);
        result = pptt::pptt_search(gen, cfg);
    }
    sample.x_ppt = result.x_ppt;
    sample.censored = result.censored;
    return sample;
}

}  // namespace

PpttSampleSet run_ensemble(const ScenarioSpec& spec, int n_samples,
                           const propagators::PropagatorConfig& cfg, std::uint64_t master_seed,
                           int workers, bool allow_fast_path, const ProgressFn& progress) {
    validate(spec);
    propagators::validate(cfg);
    if (n_samples < 1) {
        throw std::invalid_argument("run_ensemble: need at least one sample");
    }

    const bool fast_path =
        allow_fast_path && spec.correlation != Correlation::Glb && spec.k == 0.0;

    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) {
            workers = 1;
        }
    }
    workers = std::min(workers, n_samples);

    PpttSampleSet set;
    set.spec = spec;
    set.dx = cfg.dx;
    set.x_max = cfg.x_max;
    set.master_seed = master_seed;
    set.fast_path = fast_path;
    set.samples.resize(n_samples);

    std::atomic<int> next_index{0};
    std::atomic<int> done{0};
    std::mutex progress_mutex;
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker_loop = [&]() {
        while (true) {
            const int i = next_index.fetch_add(1);
            if (i >= n_samples) {
                return;
            }
            try {
                set.samples[i] = run_one_sample(spec, cfg, master_seed,
                                                static_cast<std::uint64_t>(i), fast_path);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                return;
            }
            const int completed = done.fetch_add(1) + 1;
            if (progress) {
                std::lock_guard<std::mutex> lock(progress_mutex);
                progress(completed, n_samples);
            }
        }
    };

    if (workers == 1) {
        worker_loop();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(worker_loop);
        }
        for (auto& thread : pool) {
            thread.join();
        }
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
    return set;
}

PpttSampleSet rescale_samples(const PpttSampleSet& set, double xi_old, double xi_new) {
    if (!(xi_old > 0.0) || !(xi_new > 0.0)) {
        throw std::invalid_argument("rescale_samples: trace values must be positive");
    }
    const double factor = xi_old / xi_new;
    PpttSampleSet out = set;
    out.dx *= factor;
    out.x_max *= factor;
    for (auto& sample : out.samples) {
        sample.x_ppt *= factor;
    }
    return out;
}

std::string to_string(Correlation c) {
    switch (c) {
        case Correlation::Glb:
            return "glb";
        case Correlation::Iloc:
            return "iloc";
        case Correlation::Cloc:
            return "cloc";
    }
    return "?";
}

std::string to_string(TraceRule t) {
    switch (t) {
        case TraceRule::Canonical:
            return "canonical";
        case TraceRule::SuperLinear:
            return "superlinear";
        case TraceRule::Explicit:
            return "explicit";
    }
    return "?";
}

std::string to_string(RankRule r) {
    switch (r) {
        case RankRule::Full:
            return "full";
        case RankRule::Matched:
            return "matched";
        case RankRule::Explicit:
            return "explicit";
    }
    return "?";
}

}  // namespace pptmc::scenarios
