#pragma once

// Experiment output: a JSON report (version, config echo, seed rule, checks,
// results) and CSV tables with 17 significant digits.

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "mlsim/config.hpp"

namespace mlsim {

using Json = nlohmann::ordered_json;

/// An acceptance threshold embedded in an experiment.
struct Check {
  std::string name;
  bool passed = false;
  Json detail;  // measured value(s) and the bound
};

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  Table(std::string stem, std::vector<std::string> header)
      : name(std::move(stem)), columns(std::move(header)) {}

  std::string name;  // file stem: <name>.csv
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

struct ExperimentResult {
  explicit ExperimentResult(std::string name = {}) : experiment(std::move(name)) {}

  std::string experiment;
  Json results = Json::object();
  std::vector<Table> tables;
  std::vector<Check> checks;

  Check& check(std::string name, bool passed, Json detail);
  bool passed() const;
};

/// Version string fixed at configure time (git describe).
const char* version_string();

/// The report as written to report.json. Contains nothing that depends on the
/// worker count, the output directory or the wall clock.
std::string render_report(const ExperimentConfig& config, const ExperimentResult& result);

std::string render_csv(const Table& table);

/// Machine-readable record of the failed checks (one JSON line).
std::string failure_record(const ExperimentResult& result);

/// Writes <out>/<experiment>/report.json and one CSV per table; returns the directory.
std::filesystem::path write_outputs(const ExperimentConfig& config, const ExperimentResult& result);

}  // namespace mlsim
