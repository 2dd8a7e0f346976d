// linalg.hpp — Dense complex matrix kernel: traceless operator bases, Kronecker
// products, partial transpose, trace norm, Hermitian and general eigensolvers.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace pptmc::linalg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;

// Orthonormal traceless operator set {F_m}, Tr[F_m† F_m'] = δ_{m,m'}.
struct OperatorBasis {
    int dim{0};
    std::vector<Matrix> elements;  // dim²−1 matrices, each dim×dim
};

// Generalized Gell-Mann matrices, Hilbert-Schmidt normalized to Tr[F†F] = 1.
// Fixed ordering: symmetric pairs (j<k, lexicographic), antisymmetric pairs
// (same order), then diagonal elements l = 1..d−1. For d = 2 this yields
// {σx, σy, σz}/√2.
OperatorBasis gell_mann_basis(int dim);

Matrix kron(const Matrix& a, const Matrix& b);

// Transpose of the B factor only; m must be (dim_a·dim_b)×(dim_a·dim_b) with
// the A index major (row = a·dim_b + i).
Matrix partial_transpose(const Matrix& m, int dim_a, int dim_b);

// ‖m‖₁ = Σ|λ| for Hermitian m.
double trace_norm(const Matrix& m);

// ½‖a − b‖₁ for Hermitian a, b.
double trace_distance(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);

struct HermitianEigen {
    RealVector values;  // ascending
    Matrix vectors;     // columns
};

// Rejects inputs farther than herm_tol (elementwise) from their Hermitian part.
HermitianEigen hermitian_eigen(const Matrix& m, double herm_tol = kHermitianTol);

// Eigenvalues only, ascending. No Hermiticity gate (hot path).
RealVector hermitian_eigenvalues(const Matrix& m);

struct GeneralEigen {
    Vector values;
    Matrix vectors;          // V, columns
    Matrix inverse_vectors;  // V⁻¹
    double condition{0.0};   // ‖V‖₁·‖V⁻¹‖₁
};

GeneralEigen general_eigen(const Matrix& m);

// Scaling-and-squaring Padé-13 matrix exponential.
Matrix matrix_exponential(const Matrix& m);

// Column-major vectorization and its inverse.
Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, int rows, int cols);

}  // namespace pptmc::linalg
