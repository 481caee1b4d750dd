#pragma once

#include <string>
#include <vector>

#include "varspc/charts.hpp"
#include "varspc/estimation.hpp"
#include "varspc/performance.hpp"

namespace varspc::io {

// Model document: {"v", "p", "mu": [v], "phi": [p arrays of v*v row-major],
// "sigma_eps": [v*v row-major]}. The single source of truth for models on
// disk; malformed content throws ParseError.
VarModel read_model_json(const std::string& path);
void write_model_json(const std::string& path, const VarModel& model);

// Series CSV: header "t,<name1>,...,<namev>", one observation per row.
TimeSeriesData read_series_csv(const std::string& path);
void write_series_csv(const std::string& path, const TimeSeriesData& data);

// Blocks CSV: same header, n consecutive rows per subgroup index t. When
// history_rows > 0 each block after the first carries the trailing rows of
// its predecessor as history (contiguous stream convention).
std::vector<SampleBlock> read_blocks_csv(const std::string& path,
                                         int history_rows);
void write_blocks_csv(const std::string& path,
                      const std::vector<std::string>& names,
                      const std::vector<SampleBlock>& blocks);

// Design document with full double precision so a re-ingested design scores
// identically to the in-memory one.
ChartDesign read_design_json(const std::string& path);
void write_design_json(const std::string& path, const ChartDesign& design);

// Chart CSV: "t,t2,ucl,signal"; t2 carries 8 significant digits, other
// numeric columns 6.
void write_chart_csv(const std::string& path,
                     const std::vector<ChartPoint>& points, double ucl);

// Scenario grid: {"alpha", "n": [...], "delta": [...],
// "scenarios": [{"id", "model": path relative to the grid file}]}.
ArlGrid read_grid_json(const std::string& path);

// ARL CSV: "scenario_id,n,delta,arl" with 6 significant digits.
void write_arl_csv(const std::string& path, const std::vector<ArlRow>& rows);

struct FitReport {
  OrderSelection order;
  double margin = 0.0;
  bool stationary = false;
  bool mu_from_sample_mean = false;
  int effective_T = 0;
  double aic_selected = 0.0;
  std::vector<std::string> names;
  std::vector<AcfResult> residual_acf;  // one per variable
};

void write_fit_report_json(const std::string& path, const FitReport& report);

}  // namespace varspc::io
