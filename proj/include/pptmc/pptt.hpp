// pptt.hpp — Choi states, entanglement negativity, and the PPT-time grid search.

#pragma once

#include "pptmc/propagators.hpp"

#include <utility>
#include <vector>

namespace pptmc::pptt {

using linalg::Matrix;

// Negativity at or below this absolute threshold counts as zero.
inline constexpr double kNegativityEps = 1e-10;

struct ChoiState {
    int dim_d{0};
    Matrix matrix;  // D²×D², Hermitian PSD, unit trace
};

// Projector onto (1/√D) Σ_i |i⟩|i⟩, as a D²×D² density matrix with the A index
// major (row = a·D + i).
ChoiState max_entangled_choi(int dim);

// 𝒩 = ½ Σ_l (|λ_l| − λ_l) over the eigenvalues of ρ^{T_B}.
double negativity(const Matrix& rho_ab, int dim_a, int dim_b);
double negativity(const ChoiState& rho);

// (‖ρ^{T_B}‖₁ − 1)/2; algebraically equal route kept separate as a cross-check.
double negativity_trace_norm_form(const Matrix& rho_ab, int dim_a, int dim_b);

// Choi matrix of the channel with superoperator matrix S (vec convention):
//   choi[(a·D+i),(b·D+j)] = S[(a+D·b),(i+D·j)] / D
Matrix channel_to_choi(const Matrix& channel, int dim);
// Same with the B-factor transpose fused in.
Matrix channel_to_choi_pt(const Matrix& channel, int dim);

struct PpttResult {
    double x_ppt{0.0};
    bool censored{false};
    // Optional sampled series of (x, 𝒩); empty unless requested.
    std::vector<std::pair<double, double>> negativity_trace;
};

// Scans x = dx, 2dx, … (plus x_max if not a grid multiple) and returns the
// first grid point with 𝒩 ≤ kNegativityEps; censored at x_max otherwise. The
// scan never skips points: negativity is not assumed monotone. With
// `interpolate` the crossing is refined linearly between the last two grid
// points instead of reporting the grid point itself (off by default).
PpttResult pptt_search(const gksl::GkslGenerator& gen, const propagators::PropagatorConfig& cfg,
                       bool record_trace = false, bool interpolate = false);

// Choi state of e^{xℒ} by the configured method (CaoLu steps on the dx grid).
Matrix evolve_choi(const gksl::GkslGenerator& gen, double x,
                   const propagators::PropagatorConfig& cfg);

}  // namespace pptmc::pptt
