#include "varspc/io.hpp"

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace varspc::io {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void dump_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(1) << "\n";
}

Matrix matrix_from_flat(const json& arr, int rows, int cols,
                        const std::string& what) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != rows * cols)
    throw ParseError(what + ": expected " + std::to_string(rows * cols) +
                     " row-major entries");
  Matrix out(rows, cols);
  int k = 0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = arr[k++].get<double>();
  return out;
}

json flat_from_matrix(const Matrix& m) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
  return arr;
}

Vector vector_from_json(const json& arr, int len, const std::string& what) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != len)
    throw ParseError(what + ": expected " + std::to_string(len) + " entries");
  Vector out(len);
  for (int i = 0; i < len; ++i) out(i) = arr[i].get<double>();
  return out;
}

json json_from_vector(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    out.push_back(field);
  }
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw ParseError(what + ": bad numeric field '" + s + "'");
  }
}

struct CsvTable {
  std::vector<std::string> names;  // columns after t
  std::vector<std::int64_t> t;
  Matrix values;
};

CsvTable read_csv_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");
  auto header = split_csv_line(line);
  if (header.size() < 2 || header.front() != "t")
    throw ParseError(path + ": header must be t,<name1>,...");
  CsvTable out;
  out.names.assign(header.begin() + 1, header.end());
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw ParseError(path + ": row with " + std::to_string(fields.size()) +
                       " fields, expected " + std::to_string(header.size()));
    out.t.push_back(
        static_cast<std::int64_t>(parse_double(fields[0], path + " column t")));
    std::vector<double> row;
    for (std::size_t i = 1; i < fields.size(); ++i)
      row.push_back(parse_double(fields[i], path + " column " + out.names[i - 1]));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path + ": no data rows");
  out.values.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(out.names.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
  return out;
}

std::string fmt(double x, int significant) {
  std::ostringstream ss;
  ss.precision(significant);
  ss << x;
  return ss.str();
}

}  // namespace

VarModel read_model_json(const std::string& path) {
  const json j = load_json(path);
  try {
    VarModel m;
    m.v = j.at("v").get<int>();
    m.p = j.at("p").get<int>();
    if (m.v < 1 || m.p < 0) throw ParseError(path + ": bad v or p");
    m.mu = vector_from_json(j.at("mu"), m.v, path + " mu");
    const json& phis = j.at("phi");
    if (!phis.is_array() || static_cast<int>(phis.size()) != m.p)
      throw ParseError(path + ": phi must hold p blocks");
    for (const auto& block : phis)
      m.phis.push_back(matrix_from_flat(block, m.v, m.v, path + " phi"));
    m.sigma_eps = matrix_from_flat(j.at("sigma_eps"), m.v, m.v,
                                   path + " sigma_eps");
    validate_model(m);
    return m;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_model_json(const std::string& path, const VarModel& model) {
  validate_model(model);
  json j;
  j["v"] = model.v;
  j["p"] = model.p;
  j["mu"] = json_from_vector(model.mu);
  json phis = json::array();
  for (const auto& ph : model.phis) phis.push_back(flat_from_matrix(ph));
  j["phi"] = phis;
  j["sigma_eps"] = flat_from_matrix(model.sigma_eps);
  dump_json(path, j);
}

TimeSeriesData read_series_csv(const std::string& path) {
  const CsvTable table = read_csv_table(path);
  return {table.names, table.values};
}

void write_series_csv(const std::string& path, const TimeSeriesData& data) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << "t";
  for (const auto& name : data.names) out << "," << name;
  out << "\n";
  for (Eigen::Index i = 0; i < data.rows.rows(); ++i) {
    out << (i + 1);
    for (Eigen::Index j = 0; j < data.rows.cols(); ++j)
      out << "," << fmt(data.rows(i, j), 6);
    out << "\n";
  }
}

std::vector<SampleBlock> read_blocks_csv(const std::string& path,
                                         int history_rows) {
  const CsvTable table = read_csv_table(path);
  std::vector<SampleBlock> blocks;
  Eigen::Index row = 0;
  while (row < table.values.rows()) {
    const std::int64_t id = table.t[static_cast<std::size_t>(row)];
    Eigen::Index end = row;
    while (end < table.values.rows() &&
           table.t[static_cast<std::size_t>(end)] == id)
      ++end;
    SampleBlock b;
    b.t = id;
    b.observations = table.values.middleRows(row, end - row);
    blocks.push_back(std::move(b));
    row = end;
  }
  if (history_rows > 0) {
    for (std::size_t k = 1; k < blocks.size(); ++k) {
      const Matrix& prev = blocks[k - 1].observations;
      if (prev.rows() >= history_rows)
        blocks[k].history = prev.bottomRows(history_rows);
    }
  }
  return blocks;
}

void write_blocks_csv(const std::string& path,
                      const std::vector<std::string>& names,
                      const std::vector<SampleBlock>& blocks) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << "t";
  for (const auto& name : names) out << "," << name;
  out << "\n";
  for (const auto& b : blocks)
    for (Eigen::Index i = 0; i < b.observations.rows(); ++i) {
      out << b.t;
      for (Eigen::Index j = 0; j < b.observations.cols(); ++j)
        out << "," << fmt(b.observations(i, j), 6);
      out << "\n";
    }
}

ChartDesign read_design_json(const std::string& path) {
  const json j = load_json(path);
  try {
    ChartDesign d;
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "observations")
      d.mode = ChartMode::observations;
    else if (mode == "residuals")
      d.mode = ChartMode::residuals;
    else
      throw ParseError(path + ": mode must be observations or residuals");
    d.v = j.at("v").get<int>();
    d.n = j.at("n").get<int>();
    d.alpha = j.at("alpha").get<double>();
    d.ucl = j.at("ucl").get<double>();
    d.mu0 = vector_from_json(j.at("mu0"), d.v, path + " mu0");
    d.cov = matrix_from_flat(j.at("cov"), d.v, d.v, path + " cov");
    d.inv_cov = matrix_from_flat(j.at("inv_cov"), d.v, d.v, path + " inv_cov");
    if (j.contains("filter_c"))
      d.filter_c = vector_from_json(j.at("filter_c"), d.v, path + " filter_c");
    if (j.contains("filter_phi"))
      for (const auto& block : j.at("filter_phi"))
        d.filter_phis.push_back(
            matrix_from_flat(block, d.v, d.v, path + " filter_phi"));
    return d;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_design_json(const std::string& path, const ChartDesign& design) {
  json j;
  j["mode"] =
      design.mode == ChartMode::observations ? "observations" : "residuals";
  j["v"] = design.v;
  j["n"] = design.n;
  j["alpha"] = design.alpha;
  j["ucl"] = design.ucl;
  j["mu0"] = json_from_vector(design.mu0);
  j["cov"] = flat_from_matrix(design.cov);
  j["inv_cov"] = flat_from_matrix(design.inv_cov);
  if (design.filter_c.size() > 0) {
    j["filter_c"] = json_from_vector(design.filter_c);
    json phis = json::array();
    for (const auto& ph : design.filter_phis)
      phis.push_back(flat_from_matrix(ph));
    j["filter_phi"] = phis;
  }
  dump_json(path, j);
}

void write_chart_csv(const std::string& path,
                     const std::vector<ChartPoint>& points, double ucl) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << "t,t2,ucl,signal\n";
  for (const auto& pt : points)
    out << pt.t << "," << fmt(pt.t2, 8) << "," << fmt(ucl, 6) << ","
        << (pt.signal ? 1 : 0) << "\n";
}

ArlGrid read_grid_json(const std::string& path) {
  const json j = load_json(path);
  try {
    ArlGrid grid;
    grid.alpha = j.at("alpha").get<double>();
    for (const auto& n : j.at("n")) grid.ns.push_back(n.get<int>());
    for (const auto& d : j.at("delta")) grid.deltas.push_back(d.get<double>());
    const auto base = std::filesystem::path(path).parent_path();
    for (const auto& s : j.at("scenarios")) {
      ArlScenario scen;
      scen.id = s.at("id").get<std::string>();
      const auto model_path =
          base / std::filesystem::path(s.at("model").get<std::string>());
      scen.model = read_model_json(model_path.string());
      grid.scenarios.push_back(std::move(scen));
    }
    return grid;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_arl_csv(const std::string& path, const std::vector<ArlRow>& rows) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << "scenario_id,n,delta,arl\n";
  for (const auto& r : rows)
    out << r.id << "," << r.n << "," << fmt(r.delta, 6) << "," << fmt(r.arl, 6)
        << "\n";
}

void write_fit_report_json(const std::string& path, const FitReport& report) {
  json j;
  json table = json::array();
  for (const auto& row : report.order.table)
    table.push_back({{"p", row.p},
                     {"aic", row.aic},
                     {"stationary", row.stationary},
                     {"margin", row.margin}});
  j["aic_table"] = table;
  j["selected_p"] = report.order.selected_p;
  j["stationary"] = report.stationary;
  j["margin"] = report.margin;
  j["mu_from_sample_mean"] = report.mu_from_sample_mean;
  j["effective_T"] = report.effective_T;
  j["aic_selected"] = report.aic_selected;
  json acf = json::array();
  for (std::size_t i = 0; i < report.residual_acf.size(); ++i) {
    json entry;
    entry["name"] = i < report.names.size() ? report.names[i]
                                            : "x" + std::to_string(i + 1);
    entry["r"] = report.residual_acf[i].r;
    entry["band"] = report.residual_acf[i].band;
    acf.push_back(entry);
  }
  j["residual_acf"] = acf;
  dump_json(path, j);
}

}  // namespace varspc::io
