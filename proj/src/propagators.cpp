// propagators.cpp — Standard exponentiation and Cao-Lu midpoint stepping.

#include "pptmc/propagators.hpp"

#include <cmath>
#include <stdexcept>

namespace pptmc::propagators {

using linalg::Complex;

void validate(const PropagatorConfig& cfg) {
    if (!(cfg.dx > 0.0 && cfg.dx < 1.0)) {
        throw std::invalid_argument("PropagatorConfig: dx must satisfy 0 < dx < 1");
    }
    if (!(cfg.x_max >= cfg.dx)) {
        throw std::invalid_argument("PropagatorConfig: x_max must be >= dx");
    }
}

StandardPropagator::StandardPropagator(const gksl::GkslGenerator& gen)
    : dim_(gen.dim_d), liouvillian_(gksl::liouville_matrix(gen)) {
    eigen_ = linalg::general_eigen(liouvillian_);
    fallback_ = !(eigen_.condition < kConditionLimit) || !eigen_.values.allFinite();
}

ChannelMatrix StandardPropagator::channel(double x) const {
    if (x < 0.0) {
        throw std::invalid_argument("StandardPropagator::channel: x must be >= 0");
    }
    ChannelMatrix out;
    out.dim_d = dim_;
    if (fallback_) {
        out.matrix = linalg::matrix_exponential(x * liouvillian_);
        return out;
    }
    Vector scaled(eigen_.values.size());
    for (Eigen::Index i = 0; i < scaled.size(); ++i) {
        scaled(i) = std::exp(x * eigen_.values(i));
    }
    out.matrix = eigen_.vectors * scaled.asDiagonal() * eigen_.inverse_vectors;
    return out;
}

ChannelMatrix standard_channel(const gksl::GkslGenerator& gen, double x) {
    return StandardPropagator(gen).channel(x);
}

namespace {

struct StepOperators {
    Matrix a_prime;
    Matrix a_second;
};

StepOperators step_operators(const gksl::GkslGenerator& gen, double dx) {
    const Matrix id = Matrix::Identity(gen.dim_d, gen.dim_d);
    const Matrix j = Complex(0.0, -1.0) * gksl::effective_hamiltonian(gen);
    StepOperators out;
    out.a_prime = id + (0.5 * dx) * j;
    out.a_second = id + dx * j + (0.5 * dx * dx) * (j * j);
    return out;
}

void check_step_preconditions(const Matrix& rho, double dx, const char* name) {
    if (!(dx >= 0.0 && dx < 1.0)) {
        throw std::invalid_argument(std::string(name) + ": step must satisfy 0 <= dx < 1");
    }
    if (!linalg::is_hermitian(rho, 1e-10 * std::max(1.0, rho.cwiseAbs().maxCoeff()))) {
        throw std::invalid_argument(std::string(name) + ": state must be Hermitian");
    }
}

}  // namespace

Matrix caolu_step(const gksl::GkslGenerator& gen, const Matrix& rho, double dx) {
    check_step_preconditions(rho, dx, "caolu_step");
    if (rho.rows() != gen.dim_d || rho.cols() != gen.dim_d) {
        throw std::invalid_argument("caolu_step: state dimension mismatch");
    }
    const StepOperators ops = step_operators(gen, dx);
    Matrix out = ops.a_second * rho * ops.a_second.adjoint();
    if (dx > 0.0) {
        const Matrix mid = ops.a_prime * rho * ops.a_prime.adjoint();
        out.noalias() += dx * (ops.a_prime * gksl::apply_jump(gen, mid) * ops.a_prime.adjoint());
        out.noalias() += (0.5 * dx * dx) * gksl::apply_jump(gen, gksl::apply_jump(gen, rho));
    }
    return out;
}

Matrix caolu_step_choi(const gksl::GkslGenerator& gen, const Matrix& choi, double dx) {
    check_step_preconditions(choi, dx, "caolu_step_choi");
    const int d2 = gen.dim_d * gen.dim_d;
    if (choi.rows() != d2 || choi.cols() != d2) {
        throw std::invalid_argument("caolu_step_choi: state dimension mismatch");
    }
    const Matrix id = Matrix::Identity(gen.dim_d, gen.dim_d);
    const StepOperators ops = step_operators(gen, dx);
    const Matrix a2 = linalg::kron(ops.a_second, id);
    Matrix out = a2 * choi * a2.adjoint();
    if (dx > 0.0) {
        std::vector<Matrix> lifted;
        lifted.reserve(gen.lindblad_ops.size());
        for (const Matrix& op : gen.lindblad_ops) {
            lifted.push_back(linalg::kron(op, id));
        }
        auto jump = [&lifted, d2](const Matrix& state) {
            Matrix acc = Matrix::Zero(d2, d2);
            for (const Matrix& op : lifted) {
                acc.noalias() += op * state * op.adjoint();
            }
            return acc;
        };
        const Matrix a1 = linalg::kron(ops.a_prime, id);
        const Matrix mid = a1 * choi * a1.adjoint();
        out.noalias() += dx * (a1 * jump(mid) * a1.adjoint());
        out.noalias() += (0.5 * dx * dx) * jump(jump(choi));
    }
    return out;
}

Matrix caolu_step_superoperator(const gksl::GkslGenerator& gen, double dx) {
    if (!(dx >= 0.0 && dx < 1.0)) {
        throw std::invalid_argument("caolu_step_superoperator: step must satisfy 0 <= dx < 1");
    }
    const StepOperators ops = step_operators(gen, dx);
    const int d2 = gen.dim_d * gen.dim_d;
    Matrix q = Matrix::Zero(d2, d2);
    for (const Matrix& op : gen.lindblad_ops) {
        q += linalg::kron(op.conjugate(), op);
    }
    const Matrix k1 = linalg::kron(ops.a_prime.conjugate(), ops.a_prime);
    Matrix step = linalg::kron(ops.a_second.conjugate(), ops.a_second);
    step.noalias() += dx * (k1 * q * k1);
    step.noalias() += (0.5 * dx * dx) * (q * q);
    return step;
}

Matrix propagate(const gksl::GkslGenerator& gen, const Matrix& rho0, double x,
                 const PropagatorConfig& cfg) {
    if (x < 0.0) {
        throw std::invalid_argument("propagate: x must be >= 0");
    }
    if (cfg.method == Method::Standard) {
        const ChannelMatrix channel = standard_channel(gen, x);
        return linalg::unvectorize(channel.matrix * linalg::vectorize(rho0), gen.dim_d,
                                   gen.dim_d);
    }
    if (!(cfg.dx > 0.0 && cfg.dx < 1.0)) {
        throw std::invalid_argument("propagate: dx must satisfy 0 < dx < 1");
    }
    // Full steps on the dx grid, then one shortened step to land on x exactly.
    const long n_full = static_cast<long>(std::floor(x / cfg.dx + 1e-12));
    const double remainder = x - static_cast<double>(n_full) * cfg.dx;
    Matrix state = rho0;
    for (long i = 0; i < n_full; ++i) {
        state = caolu_step(gen, state, cfg.dx);
    }
    if (remainder > 1e-12) {
        state = caolu_step(gen, state, remainder);
    }
    return state;
}

}  // namespace pptmc::propagators
