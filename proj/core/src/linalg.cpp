#include "varspc/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace varspc::linalg {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector vec(const Matrix& a) {
  Vector out(a.size());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) out(k++) = a(i, j);
  return out;
}

Matrix unvec(const Vector& x, Eigen::Index rows, Eigen::Index cols) {
  if (x.size() != rows * cols)
    throw DimensionMismatch("unvec: vector length does not match shape");
  Matrix out(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = x(k++);
  return out;
}

Matrix solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols())
    throw DimensionMismatch("solve: coefficient matrix must be square");
  if (a.rows() != b.rows())
    throw DimensionMismatch("solve: right-hand side row count mismatch");
  const Eigen::Index n = a.rows();
  Matrix u = a;
  Matrix x = b;
  const double scale = u.cwiseAbs().maxCoeff();
  const double tiny = 1e-12 * scale;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    double best = std::abs(u(col, col));
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const double m = std::abs(u(r, col));
      if (m > best) {
        best = m;
        piv = r;
      }
    }
    if (!(best > tiny))
      throw SingularMatrix("solve: pivot below singularity threshold");
    if (piv != col) {
      u.row(piv).swap(u.row(col));
      x.row(piv).swap(x.row(col));
    }
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const double f = u(r, col) / u(col, col);
      if (f == 0.0) continue;
      u.row(r).tail(n - col) -= f * u.row(col).tail(n - col);
      x.row(r) -= f * x.row(col);
    }
  }
  for (Eigen::Index col = n; col-- > 0;) {
    x.row(col) /= u(col, col);
    for (Eigen::Index r = 0; r < col; ++r) x.row(r) -= u(r, col) * x.row(col);
  }
  return x;
}

Vector solve(const Matrix& a, const Vector& b) {
  Matrix rhs = b;
  return solve(a, rhs).col(0);
}

std::vector<double> eigen_magnitudes(const Matrix& a) {
  if (a.rows() != a.cols())
    throw DimensionMismatch("eigen_magnitudes: matrix must be square");
  Eigen::EigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw NonConvergence("eigen_magnitudes: QR iteration did not converge");
  std::vector<double> mags(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    mags[static_cast<std::size_t>(i)] = std::abs(es.eigenvalues()(i));
  std::sort(mags.begin(), mags.end(), std::greater<>());
  return mags;
}

Matrix cholesky(const Matrix& s) {
  if (s.rows() != s.cols())
    throw DimensionMismatch("cholesky: matrix must be square");
  const Eigen::Index n = s.rows();
  Matrix l = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = s(j, j) - l.row(j).head(j).squaredNorm();
    if (d <= 1e-12)
      throw NotPositiveDefinite("cholesky: pivot not positive");
    l(j, j) = std::sqrt(d);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double off = s(i, j) - l.row(i).head(j).dot(l.row(j).head(j));
      l(i, j) = off / l(j, j);
    }
  }
  return l;
}

}  // namespace varspc::linalg
