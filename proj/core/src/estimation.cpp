#include "varspc/estimation.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace varspc {

namespace {

// Core regression shared by fit_var_ols (start = p) and select_order
// (start = p_max so all candidate orders score the same responses).
VarFit fit_with_start(const TimeSeriesData& data, int p, int start) {
  const Eigen::Index T = data.rows.rows();
  const int v = static_cast<int>(data.rows.cols());
  const Eigen::Index rows = T - start;
  const int k = v * p + 1;

  Matrix z(rows, k);
  for (Eigen::Index t = 0; t < rows; ++t) {
    z(t, 0) = 1.0;
    for (int i = 1; i <= p; ++i)
      z.row(t).segment(1 + (i - 1) * v, v) = data.rows.row(start + t - i);
  }
  const Matrix y = data.rows.bottomRows(rows);

  Eigen::ColPivHouseholderQR<Matrix> qr(z);
  qr.setThreshold(1e-10);
  if (qr.rank() < k)
    throw RankDeficientRegressors("fit_var_ols: regressor rank " +
                                  std::to_string(qr.rank()) + " < " +
                                  std::to_string(k));
  const Matrix b = qr.solve(y);  // k x v
  const Matrix resid = y - z * b;

  const double dof = static_cast<double>(rows - k);
  if (dof < 1.0)
    throw InvalidArgument("fit_var_ols: no residual degrees of freedom");
  const Matrix scatter = resid.transpose() * resid;

  VarFit fit;
  fit.model.v = v;
  fit.model.p = p;
  fit.model.sigma_eps = scatter / dof;
  fit.model.phis.reserve(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i)
    fit.model.phis.push_back(b.block(1 + i * v, 0, v, v).transpose());
  fit.residual_rows = resid;
  fit.effective_T = static_cast<int>(rows);

  const Matrix sigma_ml = scatter / static_cast<double>(rows);
  fit.log_det_sigma = std::log(sigma_ml.determinant());

  const Vector c = b.row(0).transpose();
  Matrix total = Matrix::Identity(v, v);
  for (const auto& ph : fit.model.phis) total -= ph;
  fit.model.mu = Vector::Zero(v);  // placeholder so the model validates
  if (is_stationary(fit.model).stationary) {
    fit.model.mu = linalg::solve(total, c);
  } else {
    fit.model.mu = data.rows.colwise().mean().transpose();
    fit.mu_from_sample_mean = true;
  }
  return fit;
}

void check_sample_size(const TimeSeriesData& data, int p) {
  const Eigen::Index T = data.rows.rows();
  const int v = static_cast<int>(data.rows.cols());
  if (p < 1) throw InvalidArgument("fit: p >= 1");
  if (T < v * p + v + 10)
    throw InvalidArgument("fit: need at least v*p + v + 10 = " +
                          std::to_string(v * p + v + 10) + " rows, have " +
                          std::to_string(T));
}

}  // namespace

Centered center(const TimeSeriesData& data) {
  Centered out;
  out.means = data.rows.colwise().mean().transpose();
  out.data.names = data.names;
  out.data.rows = data.rows.rowwise() - out.means.transpose();
  return out;
}

VarFit fit_var_ols(const TimeSeriesData& data, int p) {
  check_sample_size(data, p);
  return fit_with_start(data, p, p);
}

double aic(const VarFit& fit) {
  const int v = fit.model.v;
  const int p = fit.model.p;
  return fit.log_det_sigma +
         2.0 * (p * v * v + v) / static_cast<double>(fit.effective_T);
}

OrderSelection select_order(const TimeSeriesData& data, int p_max) {
  check_sample_size(data, p_max);
  OrderSelection out;
  double best = std::numeric_limits<double>::infinity();
  for (int p = 1; p <= p_max; ++p) {
    const VarFit fit = fit_with_start(data, p, p_max);
    const auto st = is_stationary(fit.model);
    const double score = aic(fit);
    out.table.push_back({p, score, st.stationary, st.margin});
    if (score < best) {
      best = score;
      out.selected_p = p;
    }
  }
  return out;
}

AcfResult sample_acf(const std::vector<double>& series, int max_lag) {
  const std::size_t T = series.size();
  if (T < 2) throw InvalidArgument("sample_acf: need at least 2 points");
  if (max_lag < 1 || static_cast<std::size_t>(max_lag) >= T)
    throw InvalidArgument("sample_acf: need 1 <= max_lag < T");
  const bool constant =
      std::all_of(series.begin(), series.end(),
                  [&](double x) { return x == series.front(); });
  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= static_cast<double>(T);
  double denom = 0.0;
  for (double x : series) denom += (x - mean) * (x - mean);
  if (constant || denom == 0.0)
    throw ZeroVariance("sample_acf: series is constant");

  AcfResult out;
  out.band = 1.96 / std::sqrt(static_cast<double>(T));
  out.r.reserve(static_cast<std::size_t>(max_lag));
  for (int k = 1; k <= max_lag; ++k) {
    double num = 0.0;
    for (std::size_t t = static_cast<std::size_t>(k); t < T; ++t)
      num += (series[t] - mean) * (series[t - static_cast<std::size_t>(k)] - mean);
    out.r.push_back(num / denom);
  }
  return out;
}

}  // namespace varspc
