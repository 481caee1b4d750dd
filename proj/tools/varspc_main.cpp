// varspc: design, evaluate, and run multivariate control charts for
// autocorrelated processes.
//
// Exit codes: 0 success (signals on a chart are still success), 2 malformed
// input, 3 rank-deficient regression, 4 non-stationary model, 5 excessive
// simulation censoring, 1 any other library error.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>

#include "varspc/distributions.hpp"
#include "varspc/io.hpp"

namespace {

using namespace varspc;

int run_fit(const std::string& data_path, int p_max, const std::string& out,
            const std::string& report_path) {
  const TimeSeriesData data = io::read_series_csv(data_path);
  const OrderSelection order = select_order(data, p_max);
  const VarFit fit = fit_var_ols(data, order.selected_p);
  io::write_model_json(out, fit.model);

  const auto st = is_stationary(fit.model);
  std::printf("fit: T=%lld v=%d selected p=%d aic=%.6f %s (margin %.4f)\n",
              static_cast<long long>(data.rows.rows()), fit.model.v,
              order.selected_p, aic(fit),
              st.stationary ? "stationary" : "NON-STATIONARY", st.margin);
  for (const auto& row : order.table)
    std::printf("  p=%d aic=%.6f%s\n", row.p, row.aic,
                row.stationary ? "" : "  [non-stationary]");

  if (!report_path.empty()) {
    io::FitReport report;
    report.order = order;
    report.margin = st.margin;
    report.stationary = st.stationary;
    report.mu_from_sample_mean = fit.mu_from_sample_mean;
    report.effective_T = fit.effective_T;
    report.aic_selected = aic(fit);
    report.names = data.names;
    const int lags = std::min<int>(10, fit.effective_T - 1);
    for (Eigen::Index j = 0; j < fit.residual_rows.cols(); ++j) {
      std::vector<double> col(fit.residual_rows.rows());
      for (Eigen::Index i = 0; i < fit.residual_rows.rows(); ++i)
        col[static_cast<std::size_t>(i)] = fit.residual_rows(i, j);
      report.residual_acf.push_back(sample_acf(col, lags));
    }
    io::write_fit_report_json(report_path, report);
  }
  return 0;
}

int run_design(const std::string& model_path, int n, double alpha,
               const std::string& mode_name, const std::string& phase_name,
               int m, const std::string& out) {
  const VarModel model = io::read_model_json(model_path);
  const ChartMode mode = mode_name == "residuals" ? ChartMode::residuals
                                                  : ChartMode::observations;
  Phase phase = Phase::two();
  if (phase_name == "one") {
    if (m < 1) throw InvalidArgument("--phase one requires --m >= 1");
    phase = Phase::one(m);
  }
  const ChartDesign design = build_design(model, n, alpha, mode, phase);
  io::write_design_json(out, design);
  std::printf("design: mode=%s n=%d alpha=%.8f ucl=%.6f\n", mode_name.c_str(),
              n, alpha, design.ucl);
  return 0;
}

int run_monitor(const std::string& design_path, const std::string& model_path,
                const std::string& data_path, const std::string& out) {
  const ChartDesign design = io::read_design_json(design_path);
  const VarModel model = io::read_model_json(model_path);
  auto blocks = io::read_blocks_csv(data_path, model.p);
  if (design.mode == ChartMode::residuals && model.p > 0 && !blocks.empty() &&
      !blocks.front().history) {
    std::fprintf(stderr,
                 "monitor: first block lacks history rows; skipping it\n");
    blocks.erase(blocks.begin());
  }
  const auto points = monitor(design, model, blocks);
  io::write_chart_csv(out, points, design.ucl);
  std::size_t signals = 0;
  for (const auto& pt : points) signals += pt.signal ? 1 : 0;
  std::printf("monitor: %zu blocks, %zu signal(s), ucl=%.6f\n", points.size(),
              signals, design.ucl);
  return 0;
}

int run_arl(const std::string& scenarios_path, const std::string& out) {
  const ArlGrid grid = io::read_grid_json(scenarios_path);
  const auto rows = arl_table(grid);
  io::write_arl_csv(out, rows);
  std::printf("arl: %zu rows (%zu scenarios x %zu n x %zu delta)\n",
              rows.size(), grid.scenarios.size(), grid.ns.size(),
              grid.deltas.size());
  return 0;
}

int run_compare(const std::string& model_path, int n, double alpha,
                double delta, std::uint64_t reps, std::uint64_t seed,
                std::uint64_t max_cap, bool with_fts) {
  const VarModel model = io::read_model_json(model_path);
  const ShiftSpec shift{Vector::Constant(model.v, delta)};
  const auto obs =
      build_design(model, n, alpha, ChartMode::observations, Phase::two());
  const auto res =
      build_design(model, n, alpha, ChartMode::residuals, Phase::two());
  std::printf("compare: n=%d alpha=%.8f delta=%.4f\n", n, alpha, delta);
  std::printf("  arl0 = %.4f\n", arl0(alpha));
  std::printf("  observation chart: d=%.6f arl1=%.4f\n",
              noncentrality(model, n, shift), arl1(obs, model, shift));
  Vector mshift = raw_shift(model, shift);
  for (const auto& ph : model.phis) mshift -= ph * raw_shift(model, shift);
  std::printf("  residual chart:    d=%.6f arl1=%.4f\n",
              static_cast<double>(n) *
                  mshift.dot(linalg::solve(model.sigma_eps, mshift)),
              arl1(res, model, shift));
  if (with_fts) {
    const auto fts = first_to_signal(model, n, alpha, shift, reps, max_cap, seed);
    std::printf(
        "  first-to-signal (%llu reps, seed %llu): p1=%.4f p2=%.4f p3=%.4f "
        "(n1=%llu n2=%llu n3=%llu)\n",
        static_cast<unsigned long long>(fts.replications),
        static_cast<unsigned long long>(seed), fts.p1, fts.p2, fts.p3,
        static_cast<unsigned long long>(fts.n1),
        static_cast<unsigned long long>(fts.n2),
        static_cast<unsigned long long>(fts.n3));
  }
  return 0;
}

int run_simulate(const std::string& model_path, bool continuous, int length,
                 int n, int blocks, std::uint64_t seed, double delta,
                 const std::string& out) {
  const VarModel model = io::read_model_json(model_path);
  const ShiftSpec shift{Vector::Constant(model.v, delta)};
  const VarModel gen = delta != 0.0 ? shifted_model(model, shift) : model;
  std::vector<std::string> names;
  for (int j = 0; j < model.v; ++j) names.push_back("x" + std::to_string(j + 1));
  const int burn = default_burn_in(gen.p);
  if (continuous) {
    if (length < 1) throw InvalidArgument("--continuous requires --length >= 1");
    const Matrix rows = simulate_segment(gen, length, burn, {seed, 0});
    io::write_series_csv(out, {names, rows});
    std::printf("simulate: %d continuous rows -> %s\n", length, out.c_str());
  } else {
    if (n < 1 || blocks < 1)
      throw InvalidArgument("block mode requires --n >= 1 and --blocks >= 1");
    std::vector<SampleBlock> out_blocks;
    for (int b = 0; b < blocks; ++b) {
      SampleBlock sb;
      sb.t = b + 1;
      // one independent stationary segment per block, one stream per block
      sb.observations = simulate_segment(
          gen, n, burn, {seed, static_cast<std::uint64_t>(b)});
      out_blocks.push_back(std::move(sb));
    }
    io::write_blocks_csv(out, names, out_blocks);
    std::printf("simulate: %d independent blocks of n=%d -> %s\n", blocks, n,
                out.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hotelling T2 control charts for vector autoregressive data"};
  app.require_subcommand(1);

  std::string data_path, model_path, design_path, out, report_path,
      scenarios_path;
  std::string mode_name = "observations", phase_name = "two";
  int p_max = 5, n = 1, m = 0, length = 0, blocks = 0;
  double alpha = 1.0 / 370.0, delta = 0.0;
  std::uint64_t reps = 10000, seed = 1, max_cap = varspc::kDefaultMaxCap;
  bool with_fts = false, continuous = false;

  auto* fit = app.add_subcommand("fit", "Fit a VAR model to a series CSV");
  fit->add_option("data", data_path, "input series CSV")->required();
  fit->add_option("--p-max", p_max, "maximum order for AIC selection");
  fit->add_option("--out", out, "output model JSON")->required();
  fit->add_option("--report", report_path, "optional fit report JSON");

  auto* design = app.add_subcommand("design", "Build a chart design");
  design->add_option("--model", model_path)->required();
  design->add_option("--n", n, "subgroup size")->required();
  design->add_option("--alpha", alpha, "false alarm rate");
  design->add_option("--mode", mode_name)
      ->check(CLI::IsMember({"observations", "residuals"}));
  design->add_option("--phase", phase_name)->check(CLI::IsMember({"one", "two"}));
  design->add_option("--m", m, "phase I subgroup count");
  design->add_option("--out", out)->required();

  auto* mon = app.add_subcommand("monitor", "Score blocks against a design");
  mon->add_option("--design", design_path)->required();
  mon->add_option("--model", model_path)->required();
  mon->add_option("--data", data_path, "blocks CSV")->required();
  mon->add_option("--out", out, "chart CSV")->required();

  auto* arl = app.add_subcommand("arl", "Analytic ARL table for a scenario grid");
  arl->add_option("--scenarios", scenarios_path)->required();
  arl->add_option("--out", out)->required();

  auto* cmp = app.add_subcommand(
      "compare", "Observation vs residual chart under a sustained shift");
  cmp->add_option("--model", model_path)->required();
  cmp->add_option("--n", n)->required();
  cmp->add_option("--alpha", alpha);
  cmp->add_option("--delta", delta)->required();
  cmp->add_option("--reps", reps);
  cmp->add_option("--seed", seed);
  cmp->add_option("--max-cap", max_cap);
  cmp->add_flag("--fts", with_fts, "also race the charts by simulation");

  auto* sim = app.add_subcommand("simulate", "Draw data from a model");
  sim->add_option("--model", model_path)->required();
  sim->add_flag("--continuous", continuous, "one unbroken series");
  sim->add_option("--length", length, "rows (continuous mode)");
  sim->add_option("--n", n, "rows per block");
  sim->add_option("--blocks", blocks, "independent block count");
  sim->add_option("--seed", seed);
  sim->add_option("--shift", delta, "standardized sustained shift");
  sim->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(fit))
      return run_fit(data_path, p_max, out, report_path);
    if (app.got_subcommand(design))
      return run_design(model_path, n, alpha, mode_name, phase_name, m, out);
    if (app.got_subcommand(mon))
      return run_monitor(design_path, model_path, data_path, out);
    if (app.got_subcommand(arl)) return run_arl(scenarios_path, out);
    if (app.got_subcommand(cmp))
      return run_compare(model_path, n, alpha, delta, reps, seed, max_cap,
                         with_fts);
    if (app.got_subcommand(sim))
      return run_simulate(model_path, continuous, length, n, blocks, seed,
                          delta, out);
  } catch (const varspc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const varspc::RankDeficientRegressors& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const varspc::NotStationary& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const varspc::ExcessiveCensoring& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const varspc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
