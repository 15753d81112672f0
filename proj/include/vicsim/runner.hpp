// Reproduction pipelines, sweeps, tabular output and run manifests.

#ifndef VICSIM_RUNNER_HPP
#define VICSIM_RUNNER_HPP

#include <complex>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "vicsim/correlations.hpp"
#include "vicsim/params.hpp"
#include "vicsim/propagator.hpp"
#include "vicsim/steady.hpp"

namespace vicsim {

using Params = SystemParams<double>;

// 12 significant digits, scientific.
std::string format_number(double v);

class Table {
 public:
  using Cell = std::variant<double, std::string>;

  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row);
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  double number(std::size_t row, const std::string& column) const;
  std::vector<double> column(const std::string& name) const;

  std::string to_csv() const;
  nlohmann::json to_json() const;

 private:
  std::size_t column_index(const std::string& name) const;

  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

struct RunManifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json tolerances = nlohmann::json::object();
  std::string propagator_path = "eigendecomposition";
  std::string timestamp;
  std::vector<std::string> outputs;

  nlohmann::json to_json() const;
};

nlohmann::json params_to_json(const Params& p);
// Keys: gamma0, rabi_re, rabi_im, detuning, vic. Missing keys keep `base`.
Params params_from_json(const nlohmann::json& j, Params base = {});
Params load_config(const std::filesystem::path& path, Params base = {});

std::string utc_timestamp();
std::string version_string();

// Writes <stem>.csv (and <stem>.json when a payload is given) plus
// <stem>.manifest.json into dir; returns the CSV path.
std::filesystem::path write_dataset(const std::filesystem::path& dir, const std::string& stem,
                                    const Table& table, RunManifest manifest,
                                    const nlohmann::json* payload = nullptr);

// --- single-shot outputs ----------------------------------------------------

Table steady_table(const SteadyState<double>& s);
nlohmann::json steady_json(const SteadyState<double>& s);

Table eigen_table(const EigenReport<double>& r);
nlohmann::json eigen_json(const EigenReport<double>& r);

// Nonzero entries, 1-based (row, col) in component order.
Table generator_table(const GeneratorMatrix<double>& g);

enum class VicColumns { both, on, off };

// tau is reported in units of 1/gamma0.
Table correlation_table(const CorrelationSeries<double>& s, VicColumns which);

// --- figures ------------------------------------------------------------------

struct FigureSpec {
  int id;
  double omega;
  double delta;
  std::vector<std::string> columns;
};

FigureSpec figure_spec(int id);

struct FigureResult {
  FigureSpec spec;
  Table table;
  RunManifest manifest;
};

FigureResult run_figure(int id, double gamma0 = 1.0, double tmax = 20.0, double dt = 0.02);

// --- table1 ---------------------------------------------------------------------

struct Table1Reading {
  std::string label;
  double omega;
  double delta;
  bool expected_match;
  EigenMatch<double> match;
  bool matched = false;
};

struct Table1Report {
  double tolerance = 1e-5;
  std::vector<Table1Reading> readings;
  RunManifest manifest;

  // True when every reading that should match does.
  bool passed() const;
  Table table() const;
};

const std::vector<std::complex<double>>& table1_reference_omega_3();
const std::vector<std::complex<double>>& table1_reference_omega_05();

Table1Report run_table1(double gamma0 = 1.0);

// --- sweeps -----------------------------------------------------------------------

struct SweepOptions {
  bool steady = true;
  bool eigenvalues = true;
  bool asymptotes = true;
  double gamma0 = 1.0;
  double tau_max = 60.0;
  unsigned threads = 1;
};

struct SweepResult {
  Table table;
  RunManifest manifest;
};

SweepResult run_sweep(const std::vector<double>& omegas, const std::vector<double>& deltas,
                      const SweepOptions& opt = {});

}  // namespace vicsim

#endif  // VICSIM_RUNNER_HPP
