// scenarios.hpp — Noise-correlation scenarios (GLB / iLOC / cLOC), homogeneous
// sampling rules, deterministic parallel ensemble execution, composition and
// rescaling of PPT-time samples.

#pragma once

#include "pptmc/pptt.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pptmc::scenarios {

enum class Correlation { Glb, Iloc, Cloc };

// Trace targets ξ: Canonical ξ = dim, SuperLinear ξ = dim·log₂(dim),
// Explicit per-block values (one value for GLB).
enum class TraceRule { Canonical, SuperLinear, Explicit };

// Rank bounds r: Full = dim²−1 (per block, or globally for GLB),
// Matched = Σ_j (d_j²−1) for the GLB draw, Explicit values.
enum class RankRule { Full, Matched, Explicit };

struct ScenarioSpec {
    std::vector<int> subsystem_dims{2};
    Correlation correlation{Correlation::Glb};
    TraceRule trace_rule{TraceRule::Canonical};
    std::vector<double> trace_values;  // Explicit trace rule only
    RankRule rank_rule{RankRule::Full};
    std::vector<int> rank_values;      // Explicit rank rule only
    double k{0.0};
    double gamma{1.0};
};

int total_dim(const ScenarioSpec& spec);
void validate(const ScenarioSpec& spec);

double block_trace_target(const ScenarioSpec& spec, int block);
double global_trace_target(const ScenarioSpec& spec);
int block_rank_bound(const ScenarioSpec& spec, int block);
int global_rank_bound(const ScenarioSpec& spec);

// One generator draw on the full space. GLB: one global Kossakowski draw.
// iLOC: independent block draws, embedded. cLOC: one block draw copied to all
// blocks (requires equal dims), embedded. Draw order inside the stream is
// fixed: Kossakowski block(s) first, then (iff k ≠ 0) a GUE Hamiltonian on the
// full space.
gksl::GkslGenerator draw_generator(const ScenarioSpec& spec, ensembles::RngStream& rng);

// The same block draws as draw_generator but returned as local generators
// (k = 0 only). Stream consumption is identical to the embedded path.
std::vector<gksl::GkslGenerator> draw_block_generators(const ScenarioSpec& spec,
                                                       ensembles::RngStream& rng);

// iLOC composition: a product of channels is PPT iff every factor is, so the
// composite PPT time is the max over blocks; censored if any block is.
pptt::PpttResult compose_pptt_iloc(const std::vector<pptt::PpttResult>& block_times);

struct PpttSample {
    std::uint64_t stream_index{0};
    std::uint64_t seed_key{0};  // derived stream key, replayable via single --seed
    double x_ppt{0.0};
    bool censored{false};
};

struct PpttSampleSet {
    ScenarioSpec spec;
    double dx{0.0};
    double x_max{0.0};
    std::uint64_t master_seed{0};
    bool fast_path{false};
    std::vector<PpttSample> samples;  // ordered by stream_index
};

using ProgressFn = std::function<void(int done, int total)>;

// n_samples independent draws + searches, one stream per sample index, fanned
// out over a worker pool. Results are bit-identical for any worker count.
// For k = 0 local scenarios the block-wise fast path (simulate blocks
// separately, compose via max) is used unless allow_fast_path is false.
PpttSampleSet run_ensemble(const ScenarioSpec& spec, int n_samples,
                           const propagators::PropagatorConfig& cfg, std::uint64_t master_seed,
                           int workers = 0, bool allow_fast_path = true,
                           const ProgressFn& progress = {});

// P̄'(T) = P̄((ξ'/ξ)T): every x_ppt (and the grid metadata) scales by ξ/ξ'.
PpttSampleSet rescale_samples(const PpttSampleSet& set, double xi_old, double xi_new);

std::string to_string(Correlation c);
std::string to_string(TraceRule t);
std::string to_string(RankRule r);

}  // namespace pptmc::scenarios
