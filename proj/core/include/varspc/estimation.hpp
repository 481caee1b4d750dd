#pragma once

#include <string>
#include <vector>

#include "varspc/var_model.hpp"

namespace varspc {

struct TimeSeriesData {
  std::vector<std::string> names;  // one per column
  Matrix rows;                     // T x v
};

struct Centered {
  TimeSeriesData data;
  Vector means;
};

Centered center(const TimeSeriesData& data);

struct VarFit {
  VarModel model;
  Matrix residual_rows;  // (T - p) x v one-step-ahead residuals
  double log_det_sigma = 0.0;  // ln det of the ML-divisor covariance
  int effective_T = 0;         // rows entering the regression
  // mu falls back to the sample mean when the fitted coefficients are
  // non-stationary and (I - sum phi_i) cannot be trusted.
  bool mu_from_sample_mean = false;
};

// Per-equation least squares with intercept on regressors
// [1, X_{t-1}, ..., X_{t-p}]. sigma_eps uses the degrees-of-freedom divisor
// (T - p) - (v p + 1). Requires T >= v p + v + 10 rows; throws
// RankDeficientRegressors on collinear regressors.
VarFit fit_var_ols(const TimeSeriesData& data, int p);

// ln det(sigma_ml) + 2 (p v^2 + v) / T_eff.
double aic(const VarFit& fit);

struct OrderRow {
  int p = 0;
  double aic = 0.0;
  bool stationary = false;
  double margin = 0.0;
};

struct OrderSelection {
  int selected_p = 0;
  std::vector<OrderRow> table;
};

// Fits p = 1..p_max on the common sample (responses start at row p_max so
// every candidate sees identical data) and picks the AIC minimizer.
OrderSelection select_order(const TimeSeriesData& data, int p_max);

struct AcfResult {
  std::vector<double> r;  // r[k-1] is lag-k autocorrelation, k = 1..max_lag
  double band = 0.0;      // +-1.96 / sqrt(T)
};

// Biased sample autocorrelations. Throws ZeroVariance for a constant series.
AcfResult sample_acf(const std::vector<double>& series, int max_lag);

}  // namespace varspc
