#include "mlsim/report.hpp"

#include <fmt/format.h>

#include <fstream>

#include "mlsim/error.hpp"
#include "mlsim/random.hpp"

#ifndef MLSIM_VERSION
#define MLSIM_VERSION "unknown"
#endif

namespace mlsim {

void Table::add(std::vector<Cell> row) {
  require(row.size() == columns.size(), "Table::add: row width differs from the header");
  rows.push_back(std::move(row));
}

Check& ExperimentResult::check(std::string name, bool passed, Json detail) {
  checks.push_back({std::move(name), passed, std::move(detail)});
  return checks.back();
}

bool ExperimentResult::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const char* version_string() { return MLSIM_VERSION; }

namespace {

Json config_echo(const ExperimentConfig& c) {
  Json j;
  j["experiment"] = c.experiment;
  j["seed"] = c.master_seed;
  j["model"] = {{"alpha", c.alpha}, {"beta", c.beta}, {"variant", std::string(to_string(c.variant))},
                {"eps", c.eps}};
  j["sizes"] = {{"n_list", c.n_list},
                {"t_grid", c.t_grid},
                {"replicates", c.replicates},
                {"trend_replicates", c.trend_replicates},
                {"draws", c.draws},
                {"series_length", c.series_length},
                {"u_step", c.u_step},
                {"shift", c.shift},
                {"L", c.L}};
  j["sweep"] = {{"betas", c.betas}, {"thetas", c.thetas}, {"alphas", c.alphas}, {"scales", c.scales}};
  return j;
}

std::string format_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return fmt::format("{:.17g}", *d);
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return fmt::format("{}", *i);
  return std::get<std::string>(cell);
}

}  // namespace

std::string render_report(const ExperimentConfig& config, const ExperimentResult& result) {
  Json j;
  j["experiment"] = result.experiment;
  j["version"] = version_string();
  j["status"] = result.passed() ? "pass" : "fail";
  j["seed_rule"] = kSeedRule;
  j["config"] = config_echo(config);
  Json checks = Json::array();
  for (const auto& c : result.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = checks;
  j["results"] = result.results;
  Json tables = Json::array();
  for (const auto& t : result.tables) tables.push_back(t.name + ".csv");
  j["tables"] = tables;
  return j.dump(2) + "\n";
}

std::string render_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out += (i ? "," : "") + table.columns[i];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_cell(row[i]);
    out += '\n';
  }
  return out;
}

std::string failure_record(const ExperimentResult& result) {
  Json failed = Json::array();
  for (const auto& c : result.checks)
    if (!c.passed) failed.push_back({{"name", c.name}, {"detail", c.detail}});
  Json j = {{"experiment", result.experiment}, {"status", "fail"}, {"failed_checks", failed}};
  return j.dump();
}

std::filesystem::path write_outputs(const ExperimentConfig& config, const ExperimentResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(config.output_dir) / result.experiment;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
  const auto write = [&](const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!(f << text)) throw std::runtime_error("cannot write '" + p.string() + "'");
  };
  write(dir / "report.json", render_report(config, result));
  for (const auto& t : result.tables) write(dir / (t.name + ".csv"), render_csv(t));
  return dir;
}

}  // namespace mlsim
