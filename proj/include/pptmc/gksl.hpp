// gksl.hpp — GKSL generators: Lindblad-operator reconstruction, dissipator and
// jump superoperators, effective Hamiltonian, Liouvillian matrix, and the
// block embedding of local noise into the joint space.

#pragma once

#include "pptmc/ensembles.hpp"
#include "pptmc/linalg.hpp"

#include <vector>

namespace pptmc::gksl {

using linalg::Matrix;
using linalg::OperatorBasis;
using ensembles::KossakowskiMatrix;

// Relative eigenvalue cutoff for extracting Lindblad operators from K.
inline constexpr double kRankCutoff = 1e-10;

// ℒ(·) = −ik[H, ·] + 𝒟_K(·), with time measured in 1/γ units (γ is carried as
// metadata for unit conversion only).
struct GkslGenerator {
    int dim_d{0};
    double gamma{1.0};
    double k{0.0};
    Matrix hamiltonian;             // D×D Hermitian; zero when k = 0
    KossakowskiMatrix kossakowski;  // noise descriptor, expressed in `basis`
    OperatorBasis basis;            // the F_m set the Kossakowski entries refer to
    std::vector<Matrix> lindblad_ops;
    // Subsystem decomposition the basis was built from: {dim_d} for the
    // canonical basis, the block dims for a product basis.
    std::vector<int> basis_dims;
};

// One operator per eigenvalue of K above kRankCutoff·ξ:
//   L^(ℓ) = √λ^(ℓ) Σ_m conj(U^(m,ℓ)) F_m .
// The conjugated coefficients make the operator-sum dissipator coincide with
// the Kossakowski double-sum form below.
std::vector<Matrix> lindblad_ops_from_kossakowski(const KossakowskiMatrix& k,
                                                  const OperatorBasis& basis);

// Builds a generator and derives its Lindblad operators. `hamiltonian` may be
// an empty (0×0) matrix, treated as zero. `basis_dims` defaults to {dim}.
GkslGenerator make_generator(double gamma, double k, Matrix hamiltonian,
                             KossakowskiMatrix kossakowski, OperatorBasis basis,
                             std::vector<int> basis_dims = {});

// 𝒟(ρ) = Σ_ℓ [ L ρ L† − ½{L†L, ρ} ]
Matrix apply_dissipator(const GkslGenerator& gen, const Matrix& rho);

// Defining double-sum form, Σ_{m,m'} K_{m,m'}(F_{m'} ρ F_m† − ½{F_m†F_{m'}, ρ}).
// Independent of the Lindblad-operator route; used as its cross-check.
Matrix apply_dissipator_kossakowski_form(const KossakowskiMatrix& k, const OperatorBasis& basis,
                                         const Matrix& rho);

// ℒ(ρ) = −ik[H, ρ] + 𝒟(ρ)
Matrix apply_full_generator(const GkslGenerator& gen, const Matrix& rho);

// H_eff = kH + (1/2i) Σ L†L  (non-Hermitian)
Matrix effective_hamiltonian(const GkslGenerator& gen);

// 𝒬(ρ) = Σ_ℓ L ρ L†
Matrix apply_jump(const GkslGenerator& gen, const Matrix& rho);

// D²×D² matrix M with vec(ℒ(ρ)) = M vec(ρ), column-major vec:
//   M = −ik(𝕀⊗H − Hᵀ⊗𝕀) + Σ_ℓ [ L̄⊗L − ½ 𝕀⊗(L†L) − ½ (L†L)ᵀ⊗𝕀 ]
Matrix liouville_matrix(const GkslGenerator& gen);

// Local noise layout: per-subsystem Kossakowski matrices K_j on dims (d_1..d_n).
struct LocalNoiseLayout {
    std::vector<int> subsystem_dims;
    std::vector<KossakowskiMatrix> blocks;
};

// Joint-space orthonormal traceless basis built as tensor products of the
// local basis elements padded with 𝕀/√d factors. Multi-index (ℓ_1..ℓ_n) with
// ℓ_j ∈ {0..d_j²−1} (0 ↦ identity factor), first subsystem most significant,
// all-zero combination excluded.
OperatorBasis product_basis(const std::vector<OperatorBasis>& local_bases);

// Global Kossakowski matrix of Σ_j 𝒟_{K_j}^(j) w.r.t. product_basis: each
// block enters scaled by D/d_j, so Tr K = Σ_j (D/d_j) Tr K_j exactly.
KossakowskiMatrix embed_local_dissipators(const LocalNoiseLayout& layout,
                                          const std::vector<OperatorBasis>& local_bases);

// Fixed qubit test generators (γ = 1, k = 0, ξ = 2).
GkslGenerator depolarizing_qubit();  // K = (2/3)·𝕀₃
GkslGenerator dephasing_qubit();     // K = 2·e_z e_zᵀ, single σ_z channel

}  // namespace pptmc::gksl
