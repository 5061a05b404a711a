#include "specfact/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace specfact {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_matrix_csv(const std::filesystem::path& path, const SampledMatrixFunction& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "theta";
  for (int r = 0; r < f.dim; ++r)
    for (int c = 0; c < f.dim; ++c)
      out << ",re_" << r << '_' << c << ",im_" << r << '_' << c;
  out << '\n';
  for (std::size_t j = 0; j < f.grid.size(); ++j) {
    out << format_double(f.grid.theta(j));
    for (int r = 0; r < f.dim; ++r)
      for (int c = 0; c < f.dim; ++c) {
        const cd v = f.values[j](r, c);
        out << ',' << format_double(v.real()) << ',' << format_double(v.imag());
      }
    out << '\n';
  }
}

namespace {

std::vector<double> parse_csv_line(const std::string& line, std::size_t lineno) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t comma = line.find(',', pos);
    const std::string cell =
        line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw csv_error(lineno, "cannot parse numeric cell '" + cell + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

SampledMatrixFunction read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw csv_error(1, "empty file");
  // Header: theta plus 2 n^2 value columns.
  std::size_t cols = 1;
  for (char ch : line)
    if (ch == ',') ++cols;
  if (cols < 3 || (cols - 1) % 2 != 0)
    throw csv_error(1, "expected 'theta' plus re/im column pairs");
  const std::size_t n2 = (cols - 1) / 2;
  const int dim = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n2))));
  if (static_cast<std::size_t>(dim) * dim != n2)
    throw csv_error(1, "column count does not describe a square matrix");

  std::vector<Eigen::MatrixXcd> values;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<double> row = parse_csv_line(line, lineno);
    if (row.size() != cols)
      throw csv_error(lineno, "expected " + std::to_string(cols) + " cells, got " +
                                  std::to_string(row.size()));
    Eigen::MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        const std::size_t base = 1 + 2 * (static_cast<std::size_t>(r) * dim + c);
        m(r, c) = cd(row[base], row[base + 1]);
      }
    values.push_back(std::move(m));
  }
  if (!is_power_of_two(values.size()) || values.size() < 16)
    throw csv_error(lineno, "row count must be a power of two >= 16, got " +
                                std::to_string(values.size()));
  return {CircleGrid(values.size()), dim, std::move(values)};
}

void write_function_header(const std::filesystem::path& path,
                           const SampledMatrixFunction& f, const std::string& generator,
                           const json& params) {
  json j;
  j["grid_n"] = f.grid.size();
  j["dim"] = f.dim;
  j["generator"] = generator;
  j["params"] = params;
  std::ofstream out(path);
  out << j.dump(2) << '\n';
}

namespace {

json complex_matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back({{"re", m(r, c).real()}, {"im", m(r, c).imag()}});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

json factor_to_json(const SpectralFactor& factor) {
  json j;
  j["at_zero"] = complex_matrix_to_json(factor.at_zero);
  j["residual"] = factor.residual;
  j["iterations"] = factor.iterations;
  j["converged"] = factor.converged;
  j["algorithm"] = factor.algorithm;
  j["truncation_degree"] = factor.truncation_degree;
  return j;
}

json report_to_json(const BoundReport& report) {
  json j;
  j["theorem"] = report.theorem;
  j["lhs"] = report.lhs;
  j["rhs"] = report.rhs;
  j["ratio"] = report.ratio;
  j["grid_n"] = report.grid_n;
  j["violation"] = report.violation;
  j["doubling_checked"] = report.doubling_checked;
  if (report.doubling_checked) {
    j["lhs_doubled"] = report.lhs_doubled;
    j["rhs_doubled"] = report.rhs_doubled;
  }
  j["stats"] = {{"d1", report.stats.d1},
                {"dlogdet", report.stats.dlogdet},
                {"dlogplus", report.stats.dlogplus},
                {"fp0", report.stats.fp0},
                {"finf", report.stats.finf},
                {"ellp1", report.stats.ellp1},
                {"ellinf", report.stats.ellinf},
                {"qfp1", report.stats.qfp1},
                {"n", report.stats.n},
                {"p0", report.stats.p0},
                {"p1", report.stats.p1},
                {"alpha", report.stats.alpha}};
  j["diagnostics"] = {{"residual_f", report.residual_f},
                      {"residual_g", report.residual_g},
                      {"iterations_f", report.iterations_f},
                      {"iterations_g", report.iterations_g},
                      {"min_eig_f", report.min_eig_f},
                      {"min_eig_g", report.min_eig_g}};
  return j;
}

std::string report_csv_header() {
  return "theorem,eps,grid_n,lhs,rhs,ratio,d1,dlogdet,dlogplus,violation";
}

std::string report_csv_row(const BoundReport& report, double eps) {
  std::ostringstream out;
  out << report.theorem << ',' << format_double(eps) << ',' << report.grid_n << ','
      << format_double(report.lhs) << ',' << format_double(report.rhs) << ','
      << format_double(report.ratio) << ',' << format_double(report.stats.d1) << ','
      << format_double(report.stats.dlogdet) << ','
      << format_double(report.stats.dlogplus) << ','
      << (report.violation ? 1 : 0);
  return out.str();
}

json sweep_to_json(const SweepResult& result) {
  json j;
  j["config"] = sweep_config_to_json(result.config);
  j["any_violation"] = result.any_violation;
  j["min_ratio"] = result.min_ratio;
  j["max_ratio"] = result.max_ratio;
  json exps = json::object();
  for (const auto& [name, slope] : result.fitted_exponents) exps[name] = slope;
  j["fitted_exponents"] = exps;
  json cells = json::array();
  for (const SweepCell& cell : result.cells) {
    json c;
    c["eps"] = cell.eps;
    c["theorem"] = cell.theorem;
    c["ok"] = cell.ok;
    if (cell.ok) {
      c["lhs"] = cell.report.lhs;
      c["rhs"] = cell.report.rhs;
      c["ratio"] = cell.report.ratio;
      c["violation"] = cell.report.violation;
    } else {
      c["error"] = cell.error;
    }
    cells.push_back(c);
  }
  j["cells"] = cells;
  return j;
}

std::string sweep_to_csv(const SweepResult& result) {
  std::ostringstream out;
  out << report_csv_header() << '\n';
  for (const SweepCell& cell : result.cells)
    if (cell.ok) out << report_csv_row(cell.report, cell.eps) << '\n';
  return out.str();
}

SweepConfig sweep_config_from_json(const json& j) {
  SweepConfig c;
  c.family = j.at("family").get<std::string>();
  for (const auto& e : j.at("eps")) c.eps_values.push_back(e.get<double>());
  if (j.contains("theorems"))
    for (const auto& t : j.at("theorems")) {
      const auto kind = theorem_from_name(t.get<std::string>());
      if (!kind)
        throw precondition_error("unknown theorem id '" + t.get<std::string>() + "'");
      c.theorems.push_back(*kind);
    }
  c.p0 = j.value("p0", 2.0);
  c.p1 = j.value("p1", 2.0);
  c.alpha = j.value("alpha", 0.5);
  c.grid_n = j.value("grid_n", static_cast<std::size_t>(0));
  c.jobs = j.value("jobs", 1u);
  c.seed = j.value("seed", static_cast<std::uint64_t>(1));
  if (j.contains("scalar")) {
    const json& s = j.at("scalar");
    c.scalar_params.p = s.value("p", 2.0);
    c.scalar_params.gamma = s.value("gamma", 0.6);
    c.scalar_params.gamma0 = s.value("gamma0", 0.0);
    c.scalar_params.alpha = s.value("alpha", 0.0);
    c.scalar_params.beta = s.value("beta", 0.1);
    c.scalar_params.tau = s.value("tau", -1);
  }
  return c;
}

json sweep_config_to_json(const SweepConfig& config) {
  json j;
  j["family"] = config.family;
  j["eps"] = config.eps_values;
  json names = json::array();
  for (Theorem t : config.theorems) names.push_back(theorem_name(t));
  j["theorems"] = names;
  j["p0"] = config.p0;
  j["p1"] = config.p1;
  j["alpha"] = config.alpha;
  j["grid_n"] = config.grid_n;
  j["jobs"] = config.jobs;
  j["seed"] = config.seed;
  if (config.family == "scalar6") {
    j["scalar"] = {{"p", config.scalar_params.p},
                   {"gamma", config.scalar_params.gamma},
                   {"gamma0", config.scalar_params.gamma0},
                   {"alpha", config.scalar_params.alpha},
                   {"beta", config.scalar_params.beta},
                   {"tau", config.scalar_params.tau}};
  }
  return j;
}

}  // namespace specfact
