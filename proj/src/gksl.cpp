// gksl.cpp — GKSL generator construction and superoperator actions.

#include "pptmc/gksl.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace pptmc::gksl {

using linalg::Complex;

std::vector<Matrix> lindblad_ops_from_kossakowski(const KossakowskiMatrix& k,
                                                  const OperatorBasis& basis) {
    if (basis.dim != k.dim_d) {
        throw std::invalid_argument("lindblad_ops_from_kossakowski: basis/Kossakowski dimension mismatch");
    }
    const int n = k.dim_d * k.dim_d - 1;
    if (k.matrix.rows() != n || k.matrix.cols() != n ||
        static_cast<int>(basis.elements.size()) != n) {
        throw std::invalid_argument("lindblad_ops_from_kossakowski: wrong matrix or basis size");
    }

    const double trace_scale =
        k.trace_target > 0.0 ? k.trace_target : std::abs(k.matrix.trace().real());
    const double cutoff = kRankCutoff * (trace_scale > 0.0 ? trace_scale : 1.0);

    Eigen::SelfAdjointEigenSolver<Matrix> solver(k.matrix);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("lindblad_ops_from_kossakowski: eigensolver failed");
    }

    std::vector<Matrix> ops;
    for (int l = 0; l < n; ++l) {
        const double lambda = solver.eigenvalues()(l);
        if (lambda <= cutoff) {
            continue;
        }
        Matrix op = Matrix::Zero(k.dim_d, k.dim_d);
        const double root = std::sqrt(lambda);
        for (int m = 0; m < n; ++m) {
            op += (root * std::conj(solver.eigenvectors()(m, l))) * basis.elements[m];
        }
        ops.push_back(std::move(op));
    }
    return ops;
}

GkslGenerator make_generator(double gamma, double k, Matrix hamiltonian,
                             KossakowskiMatrix kossakowski, OperatorBasis basis,
                             std::vector<int> basis_dims) {
    GkslGenerator gen;
    gen.dim_d = kossakowski.dim_d;
    gen.gamma = gamma;
    gen.k = k;
    if (hamiltonian.size() == 0) {
        hamiltonian = Matrix::Zero(gen.dim_d, gen.dim_d);
    }
    if (hamiltonian.rows() != gen.dim_d || hamiltonian.cols() != gen.dim_d) {
        throw std::invalid_argument("make_generator: Hamiltonian dimension mismatch");
    }
    gen.hamiltonian = std::move(hamiltonian);
    gen.lindblad_ops = lindblad_ops_from_kossakowski(kossakowski, basis);
    gen.kossakowski = std::move(kossakowski);
    gen.basis = std::move(basis);
    gen.basis_dims = basis_dims.empty() ? std::vector<int>{gen.dim_d} : std::move(basis_dims);
    return gen;
}

Matrix apply_dissipator(const GkslGenerator& gen, const Matrix& rho) {
    Matrix out = Matrix::Zero(gen.dim_d, gen.dim_d);
    for (const Matrix& op : gen.lindblad_ops) {
        const Matrix op_dag_op = op.adjoint() * op;
        out.noalias() += op * rho * op.adjoint();
        out.noalias() -= 0.5 * (op_dag_op * rho + rho * op_dag_op);
    }
    return out;
}

Matrix apply_dissipator_kossakowski_form(const KossakowskiMatrix& k, const OperatorBasis& basis,
                                         const Matrix& rho) {
    const int n = k.dim_d * k.dim_d - 1;
    Matrix out = Matrix::Zero(k.dim_d, k.dim_d);
    for (int m = 0; m < n; ++m) {
        const Matrix fm_dag = basis.elements[m].adjoint();
        for (int mp = 0; mp < n; ++mp) {
            const Complex coeff = k.matrix(m, mp);
            if (coeff == Complex(0.0, 0.0)) {
                continue;
            }
            const Matrix& fmp = basis.elements[mp];
            const Matrix prod = fm_dag * fmp;
            out.noalias() += coeff * (fmp * rho * fm_dag);
            out.noalias() -= (0.5 * coeff) * (prod * rho + rho * prod);
        }
    }
    return out;
}

Matrix apply_full_generator(const GkslGenerator& gen, const Matrix& rho) {
    Matrix out = apply_dissipator(gen, rho);
    if (gen.k != 0.0) {
        const Complex mik(0.0, -gen.k);
        out.noalias() += mik * (gen.hamiltonian * rho - rho * gen.hamiltonian);
    }
    return out;
}

Matrix effective_hamiltonian(const GkslGenerator& gen) {
    Matrix h_eff = gen.k * gen.hamiltonian;
    Matrix s = Matrix::Zero(gen.dim_d, gen.dim_d);
    for (const Matrix& op : gen.lindblad_ops) {
        s.noalias() += op.adjoint() * op;
    }
    h_eff += Complex(0.0, -0.5) * s;  // (1/2i)·S
    return h_eff;
}

Matrix apply_jump(const GkslGenerator& gen, const Matrix& rho) {
    Matrix out = Matrix::Zero(gen.dim_d, gen.dim_d);
    for (const Matrix& op : gen.lindblad_ops) {
        out.noalias() += op * rho * op.adjoint();
    }
    return out;
}

Matrix liouville_matrix(const GkslGenerator& gen) {
    const int d = gen.dim_d;
    const Matrix id = Matrix::Identity(d, d);
    Matrix m = Matrix::Zero(d * d, d * d);
    if (gen.k != 0.0) {
        const Complex mik(0.0, -gen.k);
        m += mik * (linalg::kron(id, gen.hamiltonian) -
                    linalg::kron(gen.hamiltonian.transpose(), id));
    }
    for (const Matrix& op : gen.lindblad_ops) {
        const Matrix op_dag_op = op.adjoint() * op;
        m += linalg::kron(op.conjugate(), op);
        m -= 0.5 * linalg::kron(id, op_dag_op);
        m -= 0.5 * linalg::kron(op_dag_op.transpose(), id);
    }
    return m;
}

OperatorBasis product_basis(const std::vector<OperatorBasis>& local_bases) {
    if (local_bases.empty()) {
        throw std::invalid_argument("product_basis: no local bases given");
    }
    const int n_blocks = static_cast<int>(local_bases.size());
    int total_dim = 1;
    std::vector<int> radix(n_blocks);
    for (int j = 0; j < n_blocks; ++j) {
        radix[j] = local_bases[j].dim * local_bases[j].dim;
        total_dim *= local_bases[j].dim;
    }

    OperatorBasis basis;
    basis.dim = total_dim;
    const int count = total_dim * total_dim;
    basis.elements.reserve(count - 1);
    for (int g = 1; g < count; ++g) {
        int rest = g;
        Matrix element = Matrix::Identity(1, 1);
        for (int j = n_blocks - 1; j >= 0; --j) {
            const int digit = rest % radix[j];
            rest /= radix[j];
            const int d = local_bases[j].dim;
            Matrix factor;
            if (digit == 0) {
                factor = Matrix::Identity(d, d) / std::sqrt(static_cast<double>(d));
            } else {
                factor = local_bases[j].elements[digit - 1];
            }
            element = linalg::kron(factor, element);
        }
        basis.elements.push_back(std::move(element));
    }
    return basis;
}

KossakowskiMatrix embed_local_dissipators(const LocalNoiseLayout& layout,
                                          const std::vector<OperatorBasis>& local_bases) {
    const std::size_t n_blocks = layout.subsystem_dims.size();
    if (n_blocks == 0 || layout.blocks.size() != n_blocks || local_bases.size() != n_blocks) {
        throw std::invalid_argument("embed_local_dissipators: inconsistent layout");
    }
    int total_dim = 1;
    for (std::size_t j = 0; j < n_blocks; ++j) {
        const int d = layout.subsystem_dims[j];
        if (layout.blocks[j].dim_d != d || local_bases[j].dim != d) {
            throw std::invalid_argument("embed_local_dissipators: block dimension mismatch");
        }
        total_dim *= d;
    }

    // stride_j = Π_{j' > j} d_{j'}² in the mixed-radix multi-index
    std::vector<long> stride(n_blocks, 1);
    for (int j = static_cast<int>(n_blocks) - 2; j >= 0; --j) {
        const long r_next = static_cast<long>(layout.subsystem_dims[j + 1]) *
                            layout.subsystem_dims[j + 1];
        stride[j] = stride[j + 1] * r_next;
    }

    const int n_global = total_dim * total_dim - 1;
    KossakowskiMatrix out;
    out.dim_d = total_dim;
    out.matrix = Matrix::Zero(n_global, n_global);
    out.trace_target = 0.0;
    out.rank_bound = 0;
    for (std::size_t j = 0; j < n_blocks; ++j) {
        const int d = layout.subsystem_dims[j];
        const int n_local = d * d - 1;
        const double weight = static_cast<double>(total_dim) / d;
        for (int a = 0; a < n_local; ++a) {
            const long ga = static_cast<long>(a + 1) * stride[j] - 1;
            for (int b = 0; b < n_local; ++b) {
                const long gb = static_cast<long>(b + 1) * stride[j] - 1;
                out.matrix(ga, gb) = weight * layout.blocks[j].matrix(a, b);
            }
        }
        out.trace_target += weight * layout.blocks[j].trace_target;
        out.rank_bound += layout.blocks[j].rank_bound;
    }
    if (out.rank_bound > n_global) {
        out.rank_bound = n_global;
    }
    return out;
}

GkslGenerator depolarizing_qubit() {
    KossakowskiMatrix k;
    k.dim_d = 2;
    k.matrix = (2.0 / 3.0) * Matrix::Identity(3, 3);
    k.trace_target = 2.0;
    k.rank_bound = 3;
    return make_generator(1.0, 0.0, Matrix(), std::move(k), linalg::gell_mann_basis(2));
}

GkslGenerator dephasing_qubit() {
    KossakowskiMatrix k;
    k.dim_d = 2;
    k.matrix = Matrix::Zero(3, 3);
    k.matrix(2, 2) = 2.0;  // σ_z direction in the fixed basis ordering
    k.trace_target = 2.0;
    k.rank_bound = 1;
    return make_generator(1.0, 0.0, Matrix(), std::move(k), linalg::gell_mann_basis(2));
}

}  // namespace pptmc::gksl
