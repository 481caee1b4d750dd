#include "varspc/var_model.hpp"

#include <string>

namespace varspc {

namespace {

Matrix sigma_xbar_companion(const Matrix& psi, const Matrix& sigma_state,
                            int n) {
  const Eigen::Index m = psi.rows();
  auto [lambda, pi] = lambda_pi(psi, n);
  const double nn = static_cast<double>(n);
  Matrix out = (sigma_state * (Matrix::Identity(m, m) + lambda.transpose() -
                               pi.transpose() / nn) +
                (lambda - pi / nn) * sigma_state) /
               nn;
  out = 0.5 * (out + out.transpose()).eval();
  return out;
}

}  // namespace

void validate_model(const VarModel& model) {
  if (model.v < 1) throw InvalidArgument("model: v must be >= 1");
  if (model.p < 0) throw InvalidArgument("model: p must be >= 0");
  if (model.mu.size() != model.v)
    throw DimensionMismatch("model: mu length != v");
  if (static_cast<int>(model.phis.size()) != model.p)
    throw DimensionMismatch("model: phi count != p");
  for (const auto& ph : model.phis)
    if (ph.rows() != model.v || ph.cols() != model.v)
      throw DimensionMismatch("model: phi block must be v x v");
  if (model.sigma_eps.rows() != model.v || model.sigma_eps.cols() != model.v)
    throw DimensionMismatch("model: sigma_eps must be v x v");
}

CompanionForm companion(const VarModel& model) {
  validate_model(model);
  const int v = model.v;
  const int p = model.p > 0 ? model.p : 1;
  CompanionForm out;
  out.v = v;
  out.p = p;
  out.psi = Matrix::Zero(v * p, v * p);
  out.sigma_b = Matrix::Zero(v * p, v * p);
  for (int i = 0; i < model.p; ++i)
    out.psi.block(0, i * v, v, v) = model.phis[static_cast<std::size_t>(i)];
  if (p > 1)
    out.psi.block(v, 0, v * (p - 1), v * (p - 1)) =
        Matrix::Identity(v * (p - 1), v * (p - 1));
  out.sigma_b.block(0, 0, v, v) = model.sigma_eps;
  return out;
}

StationarityResult is_stationary(const VarModel& model) {
  const auto comp = companion(model);
  const auto mags = linalg::eigen_magnitudes(comp.psi);
  const double max_mag = mags.empty() ? 0.0 : mags.front();
  StationarityResult out;
  out.margin = 1.0 - max_mag;
  out.stationary = max_mag < 1.0 - 1e-8;
  return out;
}

Matrix sigma_z(const VarModel& model) {
  const auto comp = companion(model);
  const Eigen::Index m = comp.psi.rows();
  const Matrix coeff =
      Matrix::Identity(m * m, m * m) - linalg::kron(comp.psi, comp.psi);
  const Vector s = linalg::solve(coeff, linalg::vec(comp.sigma_b));
  Matrix out = linalg::unvec(s, m, m);
  out = 0.5 * (out + out.transpose()).eval();
  return out;
}

LagCovariances lag_covariances(const VarModel& model, int max_lag) {
  if (max_lag < 0) throw InvalidArgument("lag_covariances: max_lag >= 0");
  const Matrix sz = sigma_z(model);
  const int v = model.v;
  const int p = model.p > 0 ? model.p : 1;
  LagCovariances out;
  out.max_lag = max_lag;
  out.gammas.reserve(static_cast<std::size_t>(max_lag) + 1);
  for (int k = 0; k <= max_lag; ++k) {
    if (k < p) {
      out.gammas.push_back(sz.block(0, k * v, v, v));
      continue;
    }
    Matrix g = Matrix::Zero(v, v);
    for (int i = 1; i <= model.p; ++i)
      g += model.phis[static_cast<std::size_t>(i - 1)] *
           out.gammas[static_cast<std::size_t>(k - i)];
    out.gammas.push_back(std::move(g));
  }
  return out;
}

Matrix cross_correlation(const VarModel& model, int k) {
  if (k < 0) throw InvalidArgument("cross_correlation: k >= 0");
  const auto lags = lag_covariances(model, k);
  const Matrix& g0 = lags.gammas.front();
  Vector dinv(model.v);
  for (int j = 0; j < model.v; ++j) {
    const double var = g0(j, j);
    if (!(var > 0.0))
      throw NotPositiveDefinite("cross_correlation: Gamma(0) diagonal");
    dinv(j) = 1.0 / std::sqrt(var);
  }
  return dinv.asDiagonal() * lags.gammas.back() * dinv.asDiagonal();
}

std::pair<Matrix, Matrix> lambda_pi(const Matrix& phi, int n) {
  if (phi.rows() != phi.cols())
    throw DimensionMismatch("lambda_pi: phi must be square");
  if (n < 1) throw InvalidArgument("lambda_pi: n >= 1");
  const Eigen::Index m = phi.rows();
  Matrix lambda = Matrix::Zero(m, m);
  Matrix pi = Matrix::Zero(m, m);
  Matrix power = Matrix::Identity(m, m);
  for (int k = 1; k <= n - 1; ++k) {
    power = (power * phi).eval();
    lambda += power;
    pi += static_cast<double>(k) * power;
  }
  return {lambda, pi};
}

Matrix sigma_xbar_var1(const VarModel& model, int n) {
  validate_model(model);
  if (model.p > 1)
    throw InvalidArgument("sigma_xbar_var1: model order must be <= 1");
  if (n < 1) throw InvalidArgument("sigma_xbar_var1: n >= 1");
  const Matrix phi =
      model.p == 1 ? model.phis.front() : Matrix::Zero(model.v, model.v);
  const Matrix out = sigma_xbar_companion(phi, sigma_z(model), n);
  linalg::cholesky(out);  // reject non positive definite results
  return out;
}

Matrix sigma_xbar(const VarModel& model, int n) {
  validate_model(model);
  if (n < 1) throw InvalidArgument("sigma_xbar: n >= 1");
  if (model.p <= 1) return sigma_xbar_var1(model, n);
  const auto comp = companion(model);
  const Matrix state_cov = sigma_z(model);
  const Matrix full = sigma_xbar_companion(comp.psi, state_cov, n);
  Matrix out = full.block(0, 0, model.v, model.v);
  out = 0.5 * (out + out.transpose()).eval();
  linalg::cholesky(out);
  return out;
}

Matrix sigma_xbar_direct(const VarModel& model, int n) {
  validate_model(model);
  if (n < 1) throw InvalidArgument("sigma_xbar_direct: n >= 1");
  const auto lags = lag_covariances(model, n - 1);
  Matrix sum = Matrix::Zero(model.v, model.v);
  for (int k = -(n - 1); k <= n - 1; ++k) {
    const Matrix& g = lags.gammas[static_cast<std::size_t>(std::abs(k))];
    const double w = static_cast<double>(n - std::abs(k));
    sum += w * (k >= 0 ? g : Matrix(g.transpose()));
  }
  return sum / (static_cast<double>(n) * static_cast<double>(n));
}

}  // namespace varspc
