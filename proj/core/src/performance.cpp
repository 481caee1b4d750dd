#include "varspc/performance.hpp"

#include <algorithm>
#include <cmath>

#include "varspc/distributions.hpp"

namespace varspc {

namespace {

// Flat-array VAR stepper for the Monte Carlo loops. Keeps the last p rows in
// a ring buffer; one step costs p*v^2 + v^2/2 multiplies plus v normals.
class Sampler {
 public:
  explicit Sampler(const VarModel& model)
      : v_(model.v), p_(model.p), mu_(model.mu) {
    c_ = model.mu;
    for (const auto& ph : model.phis) c_ -= ph * model.mu;
    phi_.resize(static_cast<std::size_t>(p_) * v_ * v_);
    for (int i = 0; i < p_; ++i)
      for (int a = 0; a < v_; ++a)
        for (int b = 0; b < v_; ++b)
          phi_[(static_cast<std::size_t>(i) * v_ + a) * v_ + b] =
              model.phis[static_cast<std::size_t>(i)](a, b);
    const Matrix l = linalg::cholesky(model.sigma_eps);
    chol_.resize(static_cast<std::size_t>(v_) * v_);
    for (int a = 0; a < v_; ++a)
      for (int b = 0; b < v_; ++b)
        chol_[static_cast<std::size_t>(a) * v_ + b] = l(a, b);
    ring_.resize(std::max(p_, 1) * static_cast<std::size_t>(v_));
    z_.resize(static_cast<std::size_t>(v_));
    reset();
  }

  void reset() {
    for (int i = 0; i < std::max(p_, 1); ++i)
      for (int a = 0; a < v_; ++a)
        ring_[static_cast<std::size_t>(i) * v_ + a] = mu_(a);
    newest_ = 0;
  }

  void step(rng::NormalSource& src) {
    for (int a = 0; a < v_; ++a) z_[static_cast<std::size_t>(a)] = src.next();
    const int slots = std::max(p_, 1);
    const int write = (newest_ + 1) % slots;
    double next[16];  // v <= 16 is far beyond any chart in this toolkit
    for (int a = 0; a < v_; ++a) {
      double acc = c_(a);
      for (int i = 1; i <= p_; ++i) {
        const int slot = (newest_ - (i - 1) + slots * 2) % slots;
        const double* row = &ring_[static_cast<std::size_t>(slot) * v_];
        const double* ph = &phi_[(static_cast<std::size_t>(i - 1) * v_ + a) * v_];
        for (int b = 0; b < v_; ++b) acc += ph[b] * row[b];
      }
      const double* lr = &chol_[static_cast<std::size_t>(a) * v_];
      for (int b = 0; b <= a; ++b) acc += lr[b] * z_[static_cast<std::size_t>(b)];
      next[a] = acc;
    }
    double* out = &ring_[static_cast<std::size_t>(write) * v_];
    for (int a = 0; a < v_; ++a) out[a] = next[a];
    newest_ = write;
  }

  // Row generated i steps ago (0 = newest). Valid for i < max(p, 1).
  const double* row_back(int i) const {
    const int slots = std::max(p_, 1);
    return &ring_[static_cast<std::size_t>((newest_ - i + 2 * slots) % slots) *
                  v_];
  }

  int v() const { return v_; }
  int p() const { return p_; }

 private:
  int v_;
  int p_;
  Vector mu_;
  Vector c_;
  std::vector<double> phi_;
  std::vector<double> chol_;
  std::vector<double> ring_;
  std::vector<double> z_;
  int newest_ = 0;
};

// Shared per-block scoring for the Monte Carlo drivers. Residual mode uses
// the filter stored in the design (the in-control model), never the data
// model, so shifted data is scored by the chart actually deployed.
class BlockScorer {
 public:
  explicit BlockScorer(const ChartDesign& design) : design_(&design) {
    if (design.mode == ChartMode::residuals) {
      if (design.filter_c.size() != design.v)
        throw InvalidArgument("residual design carries no filter");
      filter_p_ = static_cast<int>(design.filter_phis.size());
      for (int a = 0; a < design.v; ++a) filter_c_[a] = design.filter_c(a);
      filter_phi_.resize(static_cast<std::size_t>(filter_p_) * design.v *
                         design.v);
      for (int i = 0; i < filter_p_; ++i)
        for (int a = 0; a < design.v; ++a)
          for (int b = 0; b < design.v; ++b)
            filter_phi_[(static_cast<std::size_t>(i) * design.v + a) *
                            design.v +
                        b] = design.filter_phis[static_cast<std::size_t>(i)](a, b);
    }
  }

  double score(Sampler& sampler, rng::NormalSource& src, int n,
               int burn_in) const {
    sampler.reset();
    for (int s = 0; s < burn_in; ++s) sampler.step(src);
    const int v = sampler.v();
    double mean[16] = {0.0};
    if (design_->mode == ChartMode::observations) {
      for (int r = 0; r < n; ++r) {
        sampler.step(src);
        const double* row = sampler.row_back(0);
        for (int a = 0; a < v; ++a) mean[a] += row[a];
      }
    } else {
      // e_t = x_t - c - sum_i phi_i x_{t-i}; the lag rows come straight from
      // the sampler state carried out of burn-in.
      double lagged[16 * 16];
      for (int r = 0; r < n; ++r) {
        for (int i = 0; i < filter_p_; ++i) {
          const double* rb = sampler.row_back(i);
          for (int a = 0; a < v; ++a)
            lagged[static_cast<std::size_t>(i) * v + a] = rb[a];
        }
        sampler.step(src);
        const double* row = sampler.row_back(0);
        for (int a = 0; a < v; ++a) {
          double pred = filter_c_[a];
          for (int i = 0; i < filter_p_; ++i) {
            const double* ph =
                &filter_phi_[(static_cast<std::size_t>(i) * v + a) * v];
            for (int b = 0; b < v; ++b)
              pred += ph[b] * lagged[static_cast<std::size_t>(i) * v + b];
          }
          mean[a] += row[a] - pred;
        }
      }
    }
    Vector m(v);
    for (int a = 0; a < v; ++a) m(a) = mean[a] / n;
    return t2_statistic(*design_, m);
  }

 private:
  const ChartDesign* design_;
  int filter_p_ = 0;
  double filter_c_[16] = {0.0};
  std::vector<double> filter_phi_;
};

}  // namespace

Vector raw_shift(const VarModel& model, const ShiftSpec& shift) {
  validate_model(model);
  if (shift.delta.size() != model.v)
    throw DimensionMismatch("raw_shift: delta length != v");
  Vector out(model.v);
  for (int j = 0; j < model.v; ++j)
    out(j) = shift.delta(j) * std::sqrt(model.sigma_eps(j, j));
  return out;
}

VarModel shifted_model(const VarModel& model, const ShiftSpec& shift) {
  VarModel out = model;
  out.mu += raw_shift(model, shift);
  return out;
}

double noncentrality(const VarModel& model, int n, const ShiftSpec& shift) {
  const Vector delta = raw_shift(model, shift);
  return delta.dot(linalg::solve(sigma_xbar(model, n), delta));
}

double arl0(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw InvalidArgument("arl0: alpha in (0, 1)");
  return 1.0 / alpha;
}

double arl1(const ChartDesign& design, const VarModel& model,
            const ShiftSpec& shift) {
  double d = 0.0;
  if (design.mode == ChartMode::observations) {
    d = noncentrality(model, design.n, shift);
  } else {
    const Vector delta = raw_shift(model, shift);
    Vector m = delta;
    for (const auto& ph : model.phis) m -= ph * delta;
    d = static_cast<double>(design.n) *
        m.dot(linalg::solve(model.sigma_eps, m));
  }
  const double beta =
      dist::noncentral_chi2_cdf(design.ucl, static_cast<double>(design.v), d);
  return 1.0 / (1.0 - beta);
}

std::vector<ArlRow> arl_table(const ArlGrid& grid) {
  std::vector<ArlRow> rows;
  rows.reserve(grid.scenarios.size() * grid.ns.size() * grid.deltas.size());
  for (const auto& scen : grid.scenarios) {
    for (const int n : grid.ns) {
      const auto design = build_design(scen.model, n, grid.alpha,
                                       ChartMode::observations, Phase::two());
      for (const double delta : grid.deltas) {
        double arl;
        if (delta == 0.0) {
          arl = arl0(grid.alpha);
        } else {
          ShiftSpec s{Vector::Constant(scen.model.v, delta)};
          arl = arl1(design, scen.model, s);
        }
        rows.push_back({scen.id, n, delta, arl});
      }
    }
  }
  return rows;
}

int default_burn_in(int p) { return std::max(500, 50 * p); }

Matrix simulate_segment(const VarModel& model, int length, int burn_in,
                        rng::RngStream stream) {
  validate_model(model);
  if (length < 1) throw InvalidArgument("simulate_segment: length >= 1");
  if (burn_in < 0) throw InvalidArgument("simulate_segment: burn_in >= 0");
  Sampler sampler(model);
  rng::NormalSource src(stream);
  for (int s = 0; s < burn_in; ++s) sampler.step(src);
  Matrix out(length, model.v);
  for (int r = 0; r < length; ++r) {
    sampler.step(src);
    const double* row = sampler.row_back(0);
    for (int a = 0; a < model.v; ++a) out(r, a) = row[a];
  }
  return out;
}

RunLengthResult simulate_run_length(const ChartDesign& design,
                                    const VarModel& model,
                                    std::uint64_t replications,
                                    std::uint64_t max_cap,
                                    std::uint64_t master_seed) {
  validate_model(model);
  if (replications < 2)
    throw InvalidArgument("simulate_run_length: need >= 2 replications");
  if (max_cap < 1) throw InvalidArgument("simulate_run_length: max_cap >= 1");
  if (model.v != design.v)
    throw DimensionMismatch("simulate_run_length: model v != design v");
  if (design.mode == ChartMode::residuals &&
      static_cast<int>(design.filter_phis.size()) > std::max(model.p, 1))
    throw InvalidArgument(
        "simulate_run_length: residual filter order exceeds data model order");
  const int burn = default_burn_in(model.p);
  Sampler sampler(model);
  const BlockScorer scorer(design);

  std::uint64_t sum = 0;
  unsigned __int128 sum_sq = 0;
  std::uint64_t censored = 0;
  for (std::uint64_t rep = 0; rep < replications; ++rep) {
    rng::NormalSource src({master_seed, rep});
    std::uint64_t rl = max_cap;
    for (std::uint64_t blockIdx = 1; blockIdx <= max_cap; ++blockIdx) {
      const double t2 = scorer.score(sampler, src, design.n, burn);
      if (t2 > design.ucl) {
        rl = blockIdx;
        break;
      }
      if (blockIdx == max_cap) ++censored;
    }
    sum += rl;
    sum_sq += static_cast<unsigned __int128>(rl) * rl;
  }
  const double reps = static_cast<double>(replications);
  const double mean = static_cast<double>(sum) / reps;
  const double var =
      (static_cast<double>(sum_sq) - reps * mean * mean) / (reps - 1.0);
  RunLengthResult out;
  out.replications = replications;
  out.mean_rl = mean;
  out.std_error = std::sqrt(std::max(var, 0.0) / reps);
  out.max_cap = max_cap;
  out.censored = censored;
  if (100 * censored > replications)
    throw ExcessiveCensoring("simulate_run_length: " + std::to_string(censored) +
                             " of " + std::to_string(replications) +
                             " replications hit the cap");
  return out;
}

RunLengthResult misdesign_arl0(const VarModel& true_model, int n, double alpha,
                               std::uint64_t replications,
                               std::uint64_t master_seed) {
  validate_model(true_model);
  if (n < 1) throw InvalidArgument("misdesign_arl0: n >= 1");
  ChartDesign d;
  d.mode = ChartMode::observations;
  d.v = true_model.v;
  d.n = n;
  d.alpha = alpha;
  d.mu0 = true_model.mu;
  d.cov = true_model.sigma_eps / static_cast<double>(n);
  const Matrix eye = Matrix::Identity(d.v, d.v);
  d.inv_cov = linalg::solve(d.cov, eye);
  d.ucl = phase2_ucl(alpha, d.v);
  return simulate_run_length(d, true_model, replications, kDefaultMaxCap,
                             master_seed);
}

FtsResult first_to_signal(const VarModel& model, int n, double alpha,
                          const ShiftSpec& shift, std::uint64_t replications,
                          std::uint64_t max_cap, std::uint64_t master_seed) {
  validate_model(model);
  if (replications < 1)
    throw InvalidArgument("first_to_signal: need >= 1 replication");
  const auto obs_design =
      build_design(model, n, alpha, ChartMode::observations, Phase::two());
  const auto res_design =
      build_design(model, n, alpha, ChartMode::residuals, Phase::two());
  const VarModel data_model = shifted_model(model, shift);
  const int burn = default_burn_in(model.p);
  const int p = model.p;
  const int v = model.v;

  Vector c = model.mu;
  for (const auto& ph : model.phis) c -= ph * model.mu;

  Sampler sampler(data_model);
  FtsResult out;
  out.replications = replications;
  std::uint64_t censored = 0;
  for (std::uint64_t rep = 0; rep < replications; ++rep) {
    rng::NormalSource src({master_seed, rep});
    bool decided = false;
    for (std::uint64_t blockIdx = 1; blockIdx <= max_cap && !decided;
         ++blockIdx) {
      sampler.reset();
      for (int s = 0; s < burn; ++s) sampler.step(src);
      double obs_mean[16] = {0.0};
      double res_mean[16] = {0.0};
      double lagged[16 * 16];
      for (int r = 0; r < n; ++r) {
        for (int i = 0; i < p; ++i) {
          const double* rb = sampler.row_back(i);
          for (int a = 0; a < v; ++a)
            lagged[static_cast<std::size_t>(i) * v + a] = rb[a];
        }
        sampler.step(src);
        const double* row = sampler.row_back(0);
        for (int a = 0; a < v; ++a) {
          obs_mean[a] += row[a];
          double pred = c(a);
          for (int i = 1; i <= p; ++i) {
            const auto& ph = model.phis[static_cast<std::size_t>(i - 1)];
            for (int b = 0; b < v; ++b)
              pred += ph(a, b) * lagged[static_cast<std::size_t>(i - 1) * v + b];
          }
          res_mean[a] += row[a] - pred;
        }
      }
      Vector mo(v), mr(v);
      for (int a = 0; a < v; ++a) {
        mo(a) = obs_mean[a] / n;
        mr(a) = res_mean[a] / n;
      }
      const bool sig_obs = t2_statistic(obs_design, mo) > obs_design.ucl;
      const bool sig_res = t2_statistic(res_design, mr) > res_design.ucl;
      if (sig_obs || sig_res) {
        if (sig_obs && sig_res)
          ++out.n3;
        else if (sig_obs)
          ++out.n1;
        else
          ++out.n2;
        decided = true;
      }
    }
    if (!decided) {
      ++out.n3;  // cap reached with no winner; counted and flagged below
      ++censored;
    }
  }
  const double reps = static_cast<double>(replications);
  out.p1 = static_cast<double>(out.n1) / reps;
  out.p2 = static_cast<double>(out.n2) / reps;
  out.p3 = static_cast<double>(out.n3) / reps;
  if (100 * censored > replications)
    throw ExcessiveCensoring("first_to_signal: " + std::to_string(censored) +
                             " of " + std::to_string(replications) +
                             " replications undecided at the cap");
  return out;
}

}  // namespace varspc
