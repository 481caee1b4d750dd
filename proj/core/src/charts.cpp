#include "varspc/charts.hpp"

#include <string>

#include "varspc/distributions.hpp"

namespace varspc {

double phase2_ucl(double alpha, int v) {
  if (v < 1) throw InvalidArgument("phase2_ucl: v >= 1");
  return dist::chi2_quantile_upper(alpha, static_cast<double>(v));
}

double phase1_ucl(double alpha, int v, int m, int n) {
  if (v < 1 || m < 1 || n < 1)
    throw InvalidArgument("phase1_ucl: v, m, n must be >= 1");
  const int dof2 = m * n - m - v + 1;
  if (dof2 < 1)
    throw DegreesOfFreedomExhausted(
        "phase1_ucl: mn - m - v + 1 = " + std::to_string(dof2));
  const double scale = static_cast<double>(v) * (m - 1) * (n - 1) / dof2;
  return scale * dist::f_quantile_upper(alpha, static_cast<double>(v),
                                        static_cast<double>(dof2));
}

double t2_statistic(const ChartDesign& design, const Vector& mean_vector) {
  if (mean_vector.size() != design.v)
    throw DimensionMismatch("t2_statistic: mean vector length != v");
  const Vector c = mean_vector - design.mu0;
  return c.dot(design.inv_cov * c);
}

Matrix residuals(const VarModel& model, const SampleBlock& block) {
  validate_model(model);
  const Matrix& obs = block.observations;
  if (obs.cols() != model.v)
    throw DimensionMismatch("residuals: block column count != v");
  const int p = model.p;
  if (p > 0) {
    if (!block.history)
      throw MissingHistory("residuals: lag-" + std::to_string(p) +
                           " model requires history rows");
    if (block.history->rows() < p || block.history->cols() != model.v)
      throw MissingHistory("residuals: history must supply p x v rows");
  }
  Vector c = model.mu;
  for (const auto& ph : model.phis) c -= ph * model.mu;

  Matrix out(obs.rows(), model.v);
  for (Eigen::Index j = 0; j < obs.rows(); ++j) {
    Vector pred = c;
    for (int i = 1; i <= p; ++i) {
      const Eigen::Index lag_row = j - i;
      const Vector lagged =
          lag_row >= 0
              ? Vector(obs.row(lag_row).transpose())
              : Vector(block.history->row(block.history->rows() + lag_row)
                           .transpose());
      pred += model.phis[static_cast<std::size_t>(i - 1)] * lagged;
    }
    out.row(j) = obs.row(j) - pred.transpose();
  }
  return out;
}

ChartDesign build_design(const VarModel& model, int n, double alpha,
                         ChartMode mode, const Phase& phase) {
  validate_model(model);
  if (n < 1) throw InvalidArgument("build_design: n >= 1");
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw InvalidArgument("build_design: alpha in (0, 1)");
  const auto st = is_stationary(model);
  if (!st.stationary)
    throw NotStationary("build_design: companion spectral radius >= 1 (margin " +
                        std::to_string(st.margin) + ")");
  ChartDesign d;
  d.mode = mode;
  d.v = model.v;
  d.n = n;
  d.alpha = alpha;
  if (mode == ChartMode::observations) {
    d.mu0 = model.mu;
    d.cov = sigma_xbar(model, n);
  } else {
    d.mu0 = Vector::Zero(model.v);
    d.cov = model.sigma_eps / static_cast<double>(n);
    Vector c = model.mu;
    for (const auto& ph : model.phis) c -= ph * model.mu;
    d.filter_c = c;
    d.filter_phis = model.phis;
  }
  const Matrix eye = Matrix::Identity(model.v, model.v);
  d.inv_cov = linalg::solve(d.cov, eye);
  d.ucl = phase.phase_one ? phase1_ucl(alpha, model.v, phase.m, n)
                          : phase2_ucl(alpha, model.v);
  return d;
}

std::vector<ChartPoint> monitor(const ChartDesign& design,
                                const VarModel& model,
                                const std::vector<SampleBlock>& blocks) {
  std::vector<ChartPoint> out;
  out.reserve(blocks.size());
  for (const auto& block : blocks) {
    if (block.observations.rows() != design.n)
      throw DimensionMismatch("monitor: block row count != design n");
    Vector mean;
    if (design.mode == ChartMode::observations) {
      mean = block.observations.colwise().mean().transpose();
    } else {
      mean = residuals(model, block).colwise().mean().transpose();
    }
    const double t2 = t2_statistic(design, mean);
    out.push_back({block.t, t2, t2 > design.ucl});
  }
  return out;
}

}  // namespace varspc
