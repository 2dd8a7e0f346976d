// ensembles.hpp — Seeded sampling of the matrix ensembles: complex Ginibre,
// trace/rank-constrained Wishart Kossakowski matrices, GUE Hamiltonians.

#pragma once

#include "pptmc/linalg.hpp"

#include <cstdint>

namespace pptmc::ensembles {

using linalg::Complex;
using linalg::Matrix;

// Deterministic per-sample random stream. A stream is identified by a 64-bit
// key derived from (master_seed, stream_index); identical keys reproduce
// identical draws regardless of thread count or the order streams are used in.
// Generator: xoshiro256++ seeded via splitmix64; normals via Box-Muller from
// 53-bit uniforms, so draws are bit-identical across platforms.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);
    explicit RngStream(std::uint64_t raw_key);

    std::uint64_t key() const { return key_; }

    std::uint64_t next_u64();
    double next_double();          // uniform in [0, 1)
    double next_normal();          // standard normal
    Complex next_complex_normal(); // real and imaginary parts each standard normal

private:
    void seed_state(std::uint64_t key);

    std::uint64_t key_{0};
    std::uint64_t state_[4]{};
    bool has_cached_normal_{false};
    double cached_normal_{0.0};
};

// Complex Ginibre: i.i.d. entries with standard normal real and imaginary
// parts (E|z|² = 2). Entries drawn in row-major order.
Matrix sample_ginibre(int rows, int cols, RngStream& rng);

// Positive semidefinite noise descriptor K with pinned trace and bounded rank.
struct KossakowskiMatrix {
    int dim_d{0};           // Hilbert dimension D; K is (D²−1)×(D²−1)
    Matrix matrix;
    double trace_target{0}; // ξ
    int rank_bound{0};      // r
};

// K = ξ·G†G/Tr[G†G] with G an r×(D²−1) complex Ginibre matrix.
KossakowskiMatrix sample_kossakowski(int dim, double xi, int rank_bound, RngStream& rng);

// Hermitian D×D, off-diagonal complex Gaussian with variance 1 (½ per part),
// real diagonal with variance 1, trace part projected out.
Matrix sample_gue_hamiltonian(int dim, RngStream& rng);

// ⟨λ⟩ = Tr[K]/(D²−1)
double mean_rate(const KossakowskiMatrix& k);

}  // namespace pptmc::ensembles
