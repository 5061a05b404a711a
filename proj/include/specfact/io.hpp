#pragma once

#include <json.hpp>

#include <filesystem>

#include "specfact/families.hpp"

namespace specfact {

// CSV parse failures carry the offending 1-based line number.
class csv_error : public std::runtime_error {
 public:
  csv_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// 17 significant digits, '.' separator, locale independent: doubles survive a
// round trip through the CSV exactly.
std::string format_double(double x);

// Columnar CSV: theta, then re/im per matrix entry in row-major order.
void write_matrix_csv(const std::filesystem::path& path, const SampledMatrixFunction& f);
SampledMatrixFunction read_matrix_csv(const std::filesystem::path& path);

// Self-describing JSON sidecar for a sampled function.
void write_function_header(const std::filesystem::path& path,
                           const SampledMatrixFunction& f, const std::string& generator,
                           const nlohmann::json& params);

nlohmann::json factor_to_json(const SpectralFactor& factor);
nlohmann::json report_to_json(const BoundReport& report);

std::string report_csv_header();
std::string report_csv_row(const BoundReport& report, double eps);

nlohmann::json sweep_to_json(const SweepResult& result);
std::string sweep_to_csv(const SweepResult& result);

SweepConfig sweep_config_from_json(const nlohmann::json& j);
nlohmann::json sweep_config_to_json(const SweepConfig& config);

}  // namespace specfact
