#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "varspc/charts.hpp"
#include "varspc/rng.hpp"

namespace varspc {

// Sustained step shift in standardized units: coordinate j of the raw mean
// shift is delta[j] * sqrt(sigma_eps[j][j]).
struct ShiftSpec {
  Vector delta;
};

Vector raw_shift(const VarModel& model, const ShiftSpec& shift);

// Copy of the model with mu displaced by the raw shift.
VarModel shifted_model(const VarModel& model, const ShiftSpec& shift);

// Noncentrality of the mean chart: Delta' sigma_xbar(n)^-1 Delta.
double noncentrality(const VarModel& model, int n, const ShiftSpec& shift);

double arl0(double alpha);

// Analytic out-of-control ARL under a sustained shift. Observation mode uses
// the mean-chart noncentrality; residual mode uses the steady-state residual
// mean (I - sum phi_i) Delta against sigma_eps / n.
double arl1(const ChartDesign& design, const VarModel& model,
            const ShiftSpec& shift);

struct ArlScenario {
  std::string id;
  VarModel model;
};

struct ArlGrid {
  double alpha = 0.0;
  std::vector<int> ns;
  std::vector<double> deltas;  // standardized, applied to every coordinate
  std::vector<ArlScenario> scenarios;
};

struct ArlRow {
  std::string id;
  int n = 0;
  double delta = 0.0;
  double arl = 0.0;
};

std::vector<ArlRow> arl_table(const ArlGrid& grid);

// Burn-in used by all samplers: max(500, 50 p) steps from X = mu.
int default_burn_in(int p);

// One stationary segment: run burn_in + length steps from X = mu, keep the
// last `length` rows. Innovations are L z with L the Cholesky factor of
// sigma_eps and z standard normals from the stream.
Matrix simulate_segment(const VarModel& model, int length, int burn_in,
                        rng::RngStream stream);

struct RunLengthResult {
  std::uint64_t replications = 0;
  double mean_rl = 0.0;
  double std_error = 0.0;
  std::uint64_t max_cap = 0;
  std::uint64_t censored = 0;
};

inline constexpr std::uint64_t kDefaultMaxCap = 100000;

// Monte Carlo run length of the chart scoring independent inspection blocks
// drawn from `model` (already shifted by the caller when out of control).
// Replication r uses RngStream{master_seed, r}; censored replications count
// the cap. Throws ExcessiveCensoring when more than 1% of replications hit
// the cap.
RunLengthResult simulate_run_length(const ChartDesign& design,
                                    const VarModel& model,
                                    std::uint64_t replications,
                                    std::uint64_t max_cap,
                                    std::uint64_t master_seed);

// In-control ARL when the chart is designed as if observations were
// independent (covariance sigma_eps / n, chi-square limit) but the data
// follow `true_model`.
RunLengthResult misdesign_arl0(const VarModel& true_model, int n, double alpha,
                               std::uint64_t replications,
                               std::uint64_t master_seed);

struct FtsResult {
  double p1 = 0.0;  // observation chart signals strictly first
  double p2 = 0.0;  // residual chart signals strictly first
  double p3 = 0.0;  // both signal on the same block
  std::uint64_t n1 = 0, n2 = 0, n3 = 0;
  std::uint64_t replications = 0;
};

// Race between the observation chart and the residual chart on one shared
// stream of shifted blocks per replication; both charts score byte-identical
// blocks (the residual chart's history rows are the tail of each block's
// burn-in).
FtsResult first_to_signal(const VarModel& model, int n, double alpha,
                          const ShiftSpec& shift, std::uint64_t replications,
                          std::uint64_t max_cap, std::uint64_t master_seed);

}  // namespace varspc
