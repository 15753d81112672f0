// Command-line front end: steady | eigs | table1 | corr | fig | sweep | dump-generator.
//
// Exit codes: 0 success, 2 validation failure, 3 parameter error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vicsim/runner.hpp"

namespace {

constexpr int kValidationFailure = 2;
constexpr int kParameterError = 3;

struct GlobalOptions {
  std::optional<double> gamma0;
  std::string out_dir;
  std::string format = "csv";
  bool reduced_units = true;
  std::string config;
};

struct PointOptions {
  std::optional<double> omega;
  std::optional<double> omega_im;
  std::optional<double> delta;
  std::optional<int> q;
};

void add_point_options(CLI::App* sub, PointOptions& o, bool with_q) {
  sub->add_option("--omega", o.omega, "Rabi frequency (real part), units of gamma0");
  sub->add_option("--omega-im", o.omega_im, "Rabi frequency imaginary part");
  sub->add_option("--delta", o.delta, "Detuning, units of gamma0");
  if (with_q) sub->add_option("--q", o.q, "Vacuum-induced interference switch")->check(CLI::IsMember({0, 1}));
}

vicsim::Params resolve_params(const GlobalOptions& g, const PointOptions& o) {
  vicsim::Params p;
  if (!g.config.empty()) p = vicsim::load_config(g.config, p);
  if (g.gamma0) p.gamma0 = *g.gamma0;
  double re = p.rabi.real(), im = p.rabi.imag();
  if (o.omega) re = *o.omega;
  if (o.omega_im) im = *o.omega_im;
  p.rabi = {re, im};
  if (o.delta) p.detuning = *o.delta;
  if (o.q) p.vic = vicsim::vic_from_strength(*o.q);
  vicsim::validate(p);
  return p;
}

// Prints to stdout, or writes files plus a manifest when --out-dir is set.
void emit(const GlobalOptions& g, const std::string& stem, const vicsim::Table& table,
          const vicsim::RunManifest& manifest, const std::optional<nlohmann::json>& payload = {}) {
  const bool json = g.format == "json";
  if (!g.out_dir.empty()) {
    const nlohmann::json body = payload ? *payload : table.to_json();
    const auto csv = vicsim::write_dataset(g.out_dir, stem, table, manifest, json ? &body : nullptr);
    std::cerr << "wrote " << csv.string() << '\n';
    return;
  }
  if (json)
    std::cout << (payload ? *payload : table.to_json()).dump(2) << '\n';
  else
    std::cout << table.to_csv();
}

vicsim::RunManifest manifest_for(const std::string& command, const vicsim::Params& p) {
  vicsim::RunManifest m;
  m.command = command;
  m.parameters = vicsim::params_to_json(p);
  return m;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw vicsim::InvalidParameter("bad number '" + item + "' in list");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Four-level atom fluorescence correlations with vacuum-induced coherence"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--gamma0", g.gamma0, "Decay scale gamma0 (default 1)");
  app.add_option("--out-dir", g.out_dir, "Write CSV/JSON and a manifest here instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--reduced-units,!--no-reduced-units", g.reduced_units,
               "Unit prefactors for intensity and G2 (default on)");
  app.add_option("--config", g.config, "JSON config with gamma0, rabi_re, rabi_im, detuning, vic");

  PointOptions steady_o, eigs_o, corr_o, dump_o;

  auto* steady = app.add_subcommand("steady", "Steady state (nonzero density-matrix components)");
  add_point_options(steady, steady_o, true);
  std::string steady_method = "numeric";
  steady->add_option("--method", steady_method)->check(CLI::IsMember({"numeric", "analytic"}));

  auto* eigs = app.add_subcommand("eigs", "Eigenvalues of the 8x8 generator block");
  add_point_options(eigs, eigs_o, false);

  auto* table1 = app.add_subcommand("table1", "Reference eigenvalue comparison");

  auto* corr = app.add_subcommand("corr", "Two-time photon-photon correlations");
  add_point_options(corr, corr_o, false);
  std::string vic_cols = "both";
  double corr_tmax = 20.0, corr_dt = 0.02;
  bool normalized = true;
  corr->add_option("--vic", vic_cols)->check(CLI::IsMember({"both", "on", "off"}));
  corr->add_option("--tmax", corr_tmax, "Grid end, units of 1/gamma0");
  corr->add_option("--dt", corr_dt, "Grid step, units of 1/gamma0");
  corr->add_flag("--normalized,!--no-normalized", normalized, "Include g2 columns (default on)");

  auto* fig = app.add_subcommand("fig", "Reproduce one figure dataset");
  int fig_id = 0;
  double fig_tmax = 20.0, fig_dt = 0.02;
  fig->add_option("id,--id", fig_id, "Figure id 2..6")->required();
  fig->add_option("--tmax", fig_tmax);
  fig->add_option("--dt", fig_dt);

  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over Omega x Delta");
  std::string omegas = "0.5,3", deltas = "0,0.5", outputs = "steady,eigs,asymptote";
  unsigned threads = 1;
  double sweep_tau = 60.0;
  sweep->add_option("--omegas", omegas, "Comma-separated Rabi frequencies");
  sweep->add_option("--deltas", deltas, "Comma-separated detunings");
  sweep->add_option("--outputs", outputs, "Any of steady,eigs,asymptote");
  sweep->add_option("--threads", threads);
  sweep->add_option("--tau-max", sweep_tau, "Asymptote evaluation time, units of 1/gamma0");

  auto* dump = app.add_subcommand("dump-generator", "Generator matrix entries as CSV");
  add_point_options(dump, dump_o, true);
  bool block8 = false;
  dump->add_flag("--block8", block8, "Dump the closed 8x8 block instead of the full 16x16");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kParameterError;
  }

  try {
    if (steady->parsed()) {
      const auto p = resolve_params(g, steady_o);
      const auto s = steady_method == "numeric" ? vicsim::steady_numeric(p) : vicsim::steady_analytic(p);
      auto payload = vicsim::steady_json(s);
      vicsim::GeometryPrefactors<double> geom;
      geom.reduced = g.reduced_units;
      const auto i = vicsim::intensity_pi(p, geom);
      payload["intensity_pi"] = {{"reduced", i.reduced}, {"value", i.physical}};
      payload["parameters"] = vicsim::params_to_json(p);
      auto m = manifest_for("steady", p);
      m.parameters["method"] = steady_method;
      emit(g, "steady", vicsim::steady_table(s), m, payload);
    } else if (eigs->parsed()) {
      const auto p = resolve_params(g, eigs_o);
      const auto r = vicsim::report_eigenvalues(p);
      auto m = manifest_for("eigs", p);
      m.propagator_path = vicsim::to_string(r.path);
      emit(g, "eigs", vicsim::eigen_table(r), m, vicsim::eigen_json(r));
    } else if (table1->parsed()) {
      vicsim::Params base;
      if (!g.config.empty()) base = vicsim::load_config(g.config);
      const auto rep = vicsim::run_table1(g.gamma0.value_or(base.gamma0));
      emit(g, "table1", rep.table(), rep.manifest);
      for (const auto& r : rep.readings)
        std::cerr << r.label << ": max |delta| = " << vicsim::format_number(r.match.max_delta) << " -> "
                  << (r.matched ? "MATCH" : "NO-MATCH") << (r.expected_match ? "" : " (expected)") << '\n';
      if (!rep.passed()) return kValidationFailure;
    } else if (corr->parsed()) {
      const auto p = resolve_params(g, corr_o);
      vicsim::GeometryPrefactors<double> geom;
      geom.reduced = g.reduced_units;
      auto grid = vicsim::uniform_grid(corr_tmax, corr_dt);
      for (auto& t : grid) t /= p.gamma0;
      const auto s = vicsim::correlation_series(p, grid, normalized, geom);
      const auto which = vic_cols == "on"    ? vicsim::VicColumns::on
                         : vic_cols == "off" ? vicsim::VicColumns::off
                                             : vicsim::VicColumns::both;
      auto m = manifest_for("corr", p);
      m.parameters["tmax"] = corr_tmax;
      m.parameters["dt"] = corr_dt;
      m.parameters["vic_columns"] = vic_cols;
      m.parameters["normalized"] = normalized;
      m.parameters["reduced_units"] = g.reduced_units;
      m.propagator_path = vicsim::to_string(s.path);
      m.tolerances["max_imag_residue"] = s.max_imag_residue;
      emit(g, "corr", vicsim::correlation_table(s, which), m);
    } else if (fig->parsed()) {
      vicsim::Params base;
      if (!g.config.empty()) base = vicsim::load_config(g.config);
      const auto res = vicsim::run_figure(fig_id, g.gamma0.value_or(base.gamma0), fig_tmax, fig_dt);
      emit(g, "fig" + std::to_string(fig_id), res.table, res.manifest);
    } else if (sweep->parsed()) {
      vicsim::SweepOptions opt;
      vicsim::Params base;
      if (!g.config.empty()) base = vicsim::load_config(g.config);
      opt.gamma0 = g.gamma0.value_or(base.gamma0);
      opt.threads = threads;
      opt.tau_max = sweep_tau;
      opt.steady = opt.eigenvalues = opt.asymptotes = false;
      std::size_t pos = 0;
      while (pos <= outputs.size()) {
        const auto comma = outputs.find(',', pos);
        const auto item = outputs.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (item == "steady") opt.steady = true;
        else if (item == "eigs") opt.eigenvalues = true;
        else if (item == "asymptote") opt.asymptotes = true;
        else throw vicsim::InvalidParameter("unknown sweep output '" + item + "'");
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      const auto res = vicsim::run_sweep(parse_list(omegas), parse_list(deltas), opt);
      emit(g, "sweep", res.table, res.manifest);
    } else if (dump->parsed()) {
      const auto p = resolve_params(g, dump_o);
      const auto gen = block8 ? vicsim::build_block8(p) : vicsim::build_full16(p);
      auto m = manifest_for("dump-generator", p);
      m.parameters["dimension"] = gen.dimension();
      emit(g, block8 ? "generator8" : "generator16", vicsim::generator_table(gen), m);
    }
  } catch (const vicsim::InvalidParameter& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParameterError;
  } catch (const vicsim::UndefinedNormalization& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParameterError;
  } catch (const vicsim::DegenerateKernel& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParameterError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
