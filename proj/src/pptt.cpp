// pptt.cpp — Choi machinery and the PPT-time search over the x grid.

#include "pptmc/pptt.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace pptmc::pptt {

ChoiState max_entangled_choi(int dim) {
    if (dim < 2) {
        throw std::invalid_argument("max_entangled_choi: dimension must be >= 2");
    }
    ChoiState out;
    out.dim_d = dim;
    out.matrix = Matrix::Zero(dim * dim, dim * dim);
    const double inv_d = 1.0 / dim;
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            out.matrix(a * dim + a, b * dim + b) = inv_d;
        }
    }
    return out;
}

double negativity(const Matrix& rho_ab, int dim_a, int dim_b) {
    const Matrix pt = linalg::partial_transpose(rho_ab, dim_a, dim_b);
    const linalg::RealVector eigs = linalg::hermitian_eigenvalues(pt);
    double total = 0.0;
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        total += std::abs(eigs(i)) - eigs(i);
    }
    return 0.5 * total;
}

double negativity(const ChoiState& rho) {
    return negativity(rho.matrix, rho.dim_d, rho.dim_d);
}

double negativity_trace_norm_form(const Matrix& rho_ab, int dim_a, int dim_b) {
    const Matrix pt = linalg::partial_transpose(rho_ab, dim_a, dim_b);
    return 0.5 * (linalg::trace_norm(pt) - 1.0);
}

Matrix channel_to_choi(const Matrix& channel, int dim) {
    const int d2 = dim * dim;
    if (channel.rows() != d2 || channel.cols() != d2) {
        throw std::invalid_argument("channel_to_choi: channel must be D²×D²");
    }
    Matrix choi(d2, d2);
    const double inv_d = 1.0 / dim;
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            for (int i = 0; i < dim; ++i) {
                for (int j = 0; j < dim; ++j) {
                    choi(a * dim + i, b * dim + j) = inv_d * channel(a + dim * b, i + dim * j);
                }
            }
        }
    }
    return choi;
}

Matrix channel_to_choi_pt(const Matrix& channel, int dim) {
    const int d2 = dim * dim;
    if (channel.rows() != d2 || channel.cols() != d2) {
        throw std::invalid_argument("channel_to_choi_pt: channel must be D²×D²");
    }
    Matrix pt(d2, d2);
    const double inv_d = 1.0 / dim;
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            for (int i = 0; i < dim; ++i) {
                for (int j = 0; j < dim; ++j) {
                    pt(a * dim + i, b * dim + j) = inv_d * channel(a + dim * b, j + dim * i);
                }
            }
        }
    }
    return pt;
}

namespace {

struct PtSpectrumSummary {
    double negativity;
    double min_eigenvalue;
};

PtSpectrumSummary pt_spectrum(Eigen::SelfAdjointEigenSolver<Matrix>& solver, const Matrix& pt) {
    solver.compute(pt, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("pptt_search: eigensolver failed on partial transpose");
    }
    const auto& eigs = solver.eigenvalues();
    double total = 0.0;
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        total += std::abs(eigs(i)) - eigs(i);
    }
    return {0.5 * total, eigs(0)};
}

// Grid x_n = n·dx for n = 1..n_full, plus x_max when it is not a grid multiple.
struct Grid {
    long n_full;
    double remainder;
};

Grid make_grid(const propagators::PropagatorConfig& cfg) {
    Grid g;
    g.n_full = static_cast<long>(std::floor(cfg.x_max / cfg.dx + 1e-9));
    g.remainder = cfg.x_max - static_cast<double>(g.n_full) * cfg.dx;
    if (g.remainder < 1e-12) {
        g.remainder = 0.0;
    }
    return g;
}

}  // namespace

PpttResult pptt_search(const gksl::GkslGenerator& gen, const propagators::PropagatorConfig& cfg,
                       bool record_trace, bool interpolate) {
    propagators::validate(cfg);
    const int dim = gen.dim_d;
    const int d2 = dim * dim;
    const Grid grid = make_grid(cfg);

    PpttResult result;
    Eigen::SelfAdjointEigenSolver<Matrix> solver;
    double prev_x = 0.0;
    double prev_min_eig = -1.0 / dim;  // min PT eigenvalue of the initial Choi state

    auto scan_point = [&](double x, const Matrix& channel) -> bool {
        const auto spectrum = pt_spectrum(solver, channel_to_choi_pt(channel, dim));
        if (record_trace) {
            result.negativity_trace.emplace_back(x, spectrum.negativity);
        }
        if (spectrum.negativity <= kNegativityEps) {
            result.x_ppt = x;
            if (interpolate && prev_min_eig < 0.0 && spectrum.min_eigenvalue > prev_min_eig) {
                // linear root of the smallest partial-transpose eigenvalue
                result.x_ppt = prev_x + (x - prev_x) * (-prev_min_eig) /
                                            (spectrum.min_eigenvalue - prev_min_eig);
            }
            result.censored = false;
            return true;
        }
        prev_x = x;
        prev_min_eig = spectrum.min_eigenvalue;
        return false;
    };

    if (cfg.method == propagators::Method::Standard) {
        const propagators::StandardPropagator prop(gen);
        if (!prop.used_fallback()) {
            // Modes: S(x) = Σ_k e^{xλ_k} v_k w_kᵀ, assembled once per grid point.
            const auto& eigen = prop.eigen();
            Matrix modes(static_cast<Eigen::Index>(d2) * d2, d2);
            for (int k = 0; k < d2; ++k) {
                const Matrix outer = eigen.vectors.col(k) * eigen.inverse_vectors.row(k);
                modes.col(k) = linalg::vectorize(outer);
            }
            linalg::Vector weights(d2);
            Matrix channel(d2, d2);
            for (long n = 1; n <= grid.n_full + (grid.remainder > 0.0 ? 1 : 0); ++n) {
                const double x =
                    (n <= grid.n_full) ? static_cast<double>(n) * cfg.dx : cfg.x_max;
                for (int k = 0; k < d2; ++k) {
                    weights(k) = std::exp(x * eigen.values(k));
                }
                channel = linalg::unvectorize(modes * weights, d2, d2);
                if (scan_point(x, channel)) {
                    return result;
                }
            }
        } else {
            for (long n = 1; n <= grid.n_full + (grid.remainder > 0.0 ? 1 : 0); ++n) {
                const double x =
                    (n <= grid.n_full) ? static_cast<double>(n) * cfg.dx : cfg.x_max;
                if (scan_point(x, prop.channel(x).matrix)) {
                    return result;
                }
            }
        }
    } else {
        const Matrix step = propagators::caolu_step_superoperator(gen, cfg.dx);
        Matrix channel = Matrix::Identity(d2, d2);
        Matrix next(d2, d2);
        for (long n = 1; n <= grid.n_full; ++n) {
            next.noalias() = step * channel;
            channel.swap(next);
            if (scan_point(static_cast<double>(n) * cfg.dx, channel)) {
                return result;
            }
        }
        if (grid.remainder > 0.0) {
            const Matrix last = propagators::caolu_step_superoperator(gen, grid.remainder);
            next.noalias() = last * channel;
            channel.swap(next);
            if (scan_point(cfg.x_max, channel)) {
                return result;
            }
        }
    }

    result.x_ppt = cfg.x_max;
    result.censored = true;
    return result;
}

Matrix evolve_choi(const gksl::GkslGenerator& gen, double x,
                   const propagators::PropagatorConfig& cfg) {
    if (x < 0.0) {
        throw std::invalid_argument("evolve_choi: x must be >= 0");
    }
    const int d2 = gen.dim_d * gen.dim_d;
    if (cfg.method == propagators::Method::Standard) {
        return channel_to_choi(propagators::standard_channel(gen, x).matrix, gen.dim_d);
    }
    const long n_full = static_cast<long>(std::floor(x / cfg.dx + 1e-12));
    const double remainder = x - static_cast<double>(n_full) * cfg.dx;
    const Matrix step = propagators::caolu_step_superoperator(gen, cfg.dx);
    Matrix channel = Matrix::Identity(d2, d2);
    Matrix next(d2, d2);
    for (long i = 0; i < n_full; ++i) {
        next.noalias() = step * channel;
        channel.swap(next);
    }
    if (remainder > 1e-12) {
        const Matrix last = propagators::caolu_step_superoperator(gen, remainder);
        next.noalias() = last * channel;
        channel.swap(next);
    }
    return channel_to_choi(channel, gen.dim_d);
}

}  // namespace pptmc::pptt
