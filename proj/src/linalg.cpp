// linalg.cpp — Implementation of the dense complex kernel.

#include "pptmc/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <stdexcept>

namespace pptmc::linalg {

OperatorBasis gell_mann_basis(int dim) {
    if (dim < 2) {
        throw std::invalid_argument("gell_mann_basis: dimension must be >= 2");
    }
    OperatorBasis basis;
    basis.dim = dim;
    basis.elements.reserve(static_cast<std::size_t>(dim) * dim - 1);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    // Symmetric pairs: (|j><k| + |k><j|)/√2
    for (int j = 0; j < dim; ++j) {
        for (int k = j + 1; k < dim; ++k) {
            Matrix f = Matrix::Zero(dim, dim);
            f(j, k) = inv_sqrt2;
            f(k, j) = inv_sqrt2;
            basis.elements.push_back(std::move(f));
        }
    }
    // Antisymmetric pairs: (−i|j><k| + i|k><j|)/√2
    for (int j = 0; j < dim; ++j) {
        for (int k = j + 1; k < dim; ++k) {
            Matrix f = Matrix::Zero(dim, dim);
            f(j, k) = Complex(0.0, -inv_sqrt2);
            f(k, j) = Complex(0.0, +inv_sqrt2);
            basis.elements.push_back(std::move(f));
        }
    }
    // Diagonal: (Σ_{m<l}|m><m| − l|l><l|)/√(l(l+1))
    for (int l = 1; l < dim; ++l) {
        Matrix f = Matrix::Zero(dim, dim);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int m = 0; m < l; ++m) {
            f(m, m) = norm;
        }
        f(l, l) = -static_cast<double>(l) * norm;
        basis.elements.push_back(std::move(f));
    }
    return basis;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix partial_transpose(const Matrix& m, int dim_a, int dim_b) {
    const Eigen::Index n = static_cast<Eigen::Index>(dim_a) * dim_b;
    if (m.rows() != n || m.cols() != n) {
        throw std::invalid_argument("partial_transpose: matrix is not (dim_a*dim_b) square");
    }
    Matrix out(n, n);
    for (int a = 0; a < dim_a; ++a) {
        for (int b = 0; b < dim_a; ++b) {
            out.block(a * dim_b, b * dim_b, dim_b, dim_b) =
                m.block(a * dim_b, b * dim_b, dim_b, dim_b).transpose();
        }
    }
    return out;
}

double trace_norm(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("trace_norm: matrix must be square");
    }
    if (m.rows() == 0) {
        return 0.0;
    }
    return hermitian_eigenvalues(m).cwiseAbs().sum();
}

double trace_distance(const Matrix& a, const Matrix& b) {
    return 0.5 * trace_norm(a - b);
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

HermitianEigen hermitian_eigen(const Matrix& m, double herm_tol) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("hermitian_eigen: matrix must be square");
    }
    if (!is_hermitian(m, herm_tol)) {
        throw std::invalid_argument("hermitian_eigen: input is not Hermitian within tolerance");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigen: eigensolver failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
    }
    return solver.eigenvalues();
}

GeneralEigen general_eigen(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("general_eigen: matrix must be square");
    }
    Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("general_eigen: eigensolver failed");
    }
    GeneralEigen out;
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
    Eigen::PartialPivLU<Matrix> lu(out.vectors);
    out.inverse_vectors = lu.solve(Matrix::Identity(m.rows(), m.cols()));
    const double norm_v = out.vectors.cwiseAbs().colwise().sum().maxCoeff();
    const double norm_w = out.inverse_vectors.cwiseAbs().colwise().sum().maxCoeff();
    out.condition = norm_v * norm_w;
    return out;
}

Matrix matrix_exponential(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("matrix_exponential: matrix must be square");
    }
    const Eigen::Index n = m.rows();
    const Matrix id = Matrix::Identity(n, n);

    // Padé-13 coefficients
    static const double b[] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    const double theta13 = 5.371920351148152;

    const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    Matrix a = m;
    if (norm1 > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
        a /= std::pow(2.0, squarings);
    }

    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a2 * a4;
    const Matrix u =
        a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
             b[1] * id);
    const Matrix v =
        a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

    Matrix r = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) {
        r = r * r;
    }
    return r;
}

Vector vectorize(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvectorize(const Vector& v, int rows, int cols) {
    if (v.size() != static_cast<Eigen::Index>(rows) * cols) {
        throw std::invalid_argument("unvectorize: size mismatch");
    }
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

}  // namespace pptmc::linalg
