#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "varspc/var_model.hpp"

namespace varspc {

enum class ChartMode { observations, residuals };

// Phase selects the control limit: phase II uses the chi-square upper
// quantile, phase I the Beta-derived F form for m retrospective subgroups.
struct Phase {
  bool phase_one = false;
  int m = 0;  // subgroup count, phase I only

  static Phase one(int m) { return Phase{true, m}; }
  static Phase two() { return Phase{false, 0}; }
};

// Everything needed to score blocks, decoupled from the model that built it.
// Residual mode additionally carries the one-step-ahead filter of the
// in-control model so simulators can score shifted data without it.
struct ChartDesign {
  ChartMode mode = ChartMode::observations;
  int v = 0;
  int n = 0;
  Vector mu0;      // target for the plotted mean (zero in residual mode)
  Matrix cov;      // covariance of the plotted mean
  Matrix inv_cov;  // its inverse, cached
  double ucl = 0.0;
  double alpha = 0.0;
  Vector filter_c;                 // (I - sum phi_i) mu of the design model
  std::vector<Matrix> filter_phis;
};

struct SampleBlock {
  std::int64_t t = 0;
  Matrix observations;             // n x v
  std::optional<Matrix> history;   // p x v rows preceding the block
};

struct ChartPoint {
  std::int64_t t = 0;
  double t2 = 0.0;
  bool signal = false;  // strict exceedance: t2 > ucl
};

double phase2_ucl(double alpha, int v);

// v(m-1)(n-1) / (mn - m - v + 1) * F_upper(alpha; v, mn - m - v + 1).
// Throws DegreesOfFreedomExhausted when mn - m - v + 1 < 1.
double phase1_ucl(double alpha, int v, int m, int n);

double t2_statistic(const ChartDesign& design, const Vector& mean_vector);

// One-step-ahead residuals for every row of the block. Row j of the result
// needs the p rows before it: earlier block rows when available, otherwise
// the trailing rows of block.history. Throws MissingHistory when p > 0 and
// the block carries no history.
Matrix residuals(const VarModel& model, const SampleBlock& block);

ChartDesign build_design(const VarModel& model, int n, double alpha,
                         ChartMode mode, const Phase& phase);

std::vector<ChartPoint> monitor(const ChartDesign& design,
                                const VarModel& model,
                                const std::vector<SampleBlock>& blocks);

}  // namespace varspc
