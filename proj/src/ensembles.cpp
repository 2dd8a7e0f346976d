// ensembles.cpp — Random stream and matrix ensemble samplers.

#include "pptmc/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pptmc::ensembles {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += kGolden;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::uint64_t s = master_seed + kGolden * (stream_index + 1);
    key_ = splitmix64(s);
    seed_state(key_);
}

RngStream::RngStream(std::uint64_t raw_key) : key_(raw_key) {
    seed_state(key_);
}

void RngStream::seed_state(std::uint64_t key) {
    std::uint64_t s = key;
    for (auto& word : state_) {
        word = splitmix64(s);
    }
}

std::uint64_t RngStream::next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = 1.0 - next_double();  // (0, 1]
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = radius * std::sin(angle);
    has_cached_normal_ = true;
    return radius * std::cos(angle);
}

Complex RngStream::next_complex_normal() {
    const double u1 = 1.0 - next_double();
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

Matrix sample_ginibre(int rows, int cols, RngStream& rng) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("sample_ginibre: rows and cols must be >= 1");
    }
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            g(i, j) = rng.next_complex_normal();
        }
    }
    return g;
}

KossakowskiMatrix sample_kossakowski(int dim, double xi, int rank_bound, RngStream& rng) {
    if (dim < 2) {
        throw std::invalid_argument("sample_kossakowski: dimension must be >= 2");
    }
    if (!(xi > 0.0)) {
        throw std::invalid_argument("sample_kossakowski: trace target must be positive");
    }
    const int n = dim * dim - 1;
    if (rank_bound < 1 || rank_bound > n) {
        throw std::invalid_argument("sample_kossakowski: rank bound out of range");
    }
    const Matrix g = sample_ginibre(rank_bound, n, rng);
    Matrix w = g.adjoint() * g;
    const double tr = w.trace().real();
    KossakowskiMatrix k;
    k.dim_d = dim;
    k.matrix = (xi / tr) * w;
    k.trace_target = xi;
    k.rank_bound = rank_bound;
    return k;
}

Matrix sample_gue_hamiltonian(int dim, RngStream& rng) {
    if (dim < 2) {
        throw std::invalid_argument("sample_gue_hamiltonian: dimension must be >= 2");
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Matrix h(dim, dim);
    for (int i = 0; i < dim; ++i) {
        h(i, i) = rng.next_normal();
        for (int j = i + 1; j < dim; ++j) {
            const Complex z = rng.next_complex_normal() * inv_sqrt2;
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    const Complex trace_part = h.trace() / static_cast<double>(dim);
    h -= trace_part * Matrix::Identity(dim, dim);
    return h;
}

double mean_rate(const KossakowskiMatrix& k) {
    const int n = k.dim_d * k.dim_d - 1;
    return k.matrix.trace().real() / static_cast<double>(n);
}

}  // namespace pptmc::ensembles
