#pragma once

#include <Eigen/Dense>
#include <vector>

#include "varspc/errors.hpp"

namespace varspc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace linalg {

// Kronecker product a (m x n) with b (p x q), result (mp x nq).
Matrix kron(const Matrix& a, const Matrix& b);

// Column-stacking vectorization: vec(a)(i + j*rows) = a(i, j).
Vector vec(const Matrix& a);

// Inverse of vec: reshape a length r*c vector into an r x c matrix by columns.
Matrix unvec(const Vector& x, Eigen::Index rows, Eigen::Index cols);

// Solve a * x = b by Gaussian elimination with partial pivoting.
// Throws SingularMatrix when a pivot magnitude falls below 1e-12 times the
// largest magnitude entry of the initial matrix.
Matrix solve(const Matrix& a, const Matrix& b);
Vector solve(const Matrix& a, const Vector& b);

// Magnitudes of all eigenvalues of a square real matrix, sorted descending.
// Throws NonConvergence if the underlying QR iteration does not converge.
std::vector<double> eigen_magnitudes(const Matrix& a);

// Lower Cholesky factor of a symmetric positive definite matrix.
// Throws NotPositiveDefinite when a pivot is <= 1e-12.
Matrix cholesky(const Matrix& s);

}  // namespace linalg
}  // namespace varspc
