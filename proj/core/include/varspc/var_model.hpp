#pragma once

#include <utility>
#include <vector>

#include "varspc/linalg.hpp"

namespace varspc {

// Vector autoregression of order p on v variables:
//   X_t - mu = sum_i phi[i] (X_{t-i} - mu) + eps_t,  eps_t ~ N_v(0, sigma_eps).
// Stationarity is a checkable predicate (is_stationary), not a construction
// invariant, so estimated models can be represented and then flagged.
struct VarModel {
  int v = 0;
  int p = 0;
  Vector mu;
  std::vector<Matrix> phis;  // phis[i] is the lag-(i+1) coefficient block
  Matrix sigma_eps;
};

struct CompanionForm {
  Matrix psi;      // vp x vp
  Matrix sigma_b;  // vp x vp, sigma_eps in the top-left block
  int v = 0;
  int p = 0;
};

struct StationarityResult {
  bool stationary = false;
  double margin = 0.0;  // 1 - max eigenvalue magnitude of the companion
};

struct LagCovariances {
  int max_lag = 0;
  std::vector<Matrix> gammas;  // gammas[k] = Cov(X_t, X_{t-k}), k = 0..max_lag
};

// Throws InvalidArgument on inconsistent dimensions.
void validate_model(const VarModel& model);

// For p = 1 the companion is the model itself: psi = phi1, sigma_b = sigma_eps.
CompanionForm companion(const VarModel& model);

// Stationary iff max |eigenvalue of psi| < 1 - 1e-8.
StationarityResult is_stationary(const VarModel& model);

// Stationary covariance of the stacked state Z_t = (X_t, ..., X_{t-p+1}):
// solves (I - psi (x) psi) vec(S) = vec(sigma_b) and symmetrizes. The first
// block row of S is Gamma(0), Gamma(1), ..., Gamma(p-1).
Matrix sigma_z(const VarModel& model);

// Gamma(0..max_lag); lags >= p via Gamma(k) = sum_i phi[i] Gamma(k-i).
LagCovariances lag_covariances(const VarModel& model, int max_lag);

// D^-1 Gamma(k) D^-1 with D = diag(sqrt(Gamma(0)_jj)).
Matrix cross_correlation(const VarModel& model, int k);

// Lambda = sum_{k=1}^{n-1} phi^k and Pi = sum_{k=1}^{n-1} k phi^k by direct
// summation (n >= 1; both empty sums are zero).
std::pair<Matrix, Matrix> lambda_pi(const Matrix& phi, int n);

// Covariance of the mean of n consecutive observations.
// VAR(1) closed form:
//   (1/n) [ S (I + Lambda' - Pi'/n) + (Lambda - Pi/n) S ],  S = Gamma(0).
// General p applies the same formula to the companion state and takes the
// top-left v x v block. Result is validated positive definite.
Matrix sigma_xbar_var1(const VarModel& model, int n);
Matrix sigma_xbar(const VarModel& model, int n);

// Oracle form (1/n^2) sum_{k=-(n-1)}^{n-1} (n - |k|) Gamma(k).
Matrix sigma_xbar_direct(const VarModel& model, int n);

}  // namespace varspc
