#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "vicsim/runner.hpp"

#ifndef VICSIM_VERSION
#define VICSIM_VERSION "0.0.0"
#endif

namespace vicsim {

std::string version_string() { return VICSIM_VERSION; }

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json RunManifest::to_json() const {
  return {
      {"command", command},
      {"parameters", parameters},
      {"tolerances", tolerances},
      {"versions",
       {{"vicsim", version_string()},
        {"params", "1"},
        {"generator", "1"},
        {"steady", "1"},
        {"propagator", "1"},
        {"correlations", "1"},
        {"runner", "1"}}},
      {"propagator_path", propagator_path},
      {"timestamp", timestamp.empty() ? utc_timestamp() : timestamp},
      {"outputs", outputs},
  };
}

nlohmann::json params_to_json(const Params& p) {
  return {{"gamma0", p.gamma0},
          {"rabi_re", p.rabi.real()},
          {"rabi_im", p.rabi.imag()},
          {"detuning", p.detuning},
          {"vic", p.q()}};
}

Params params_from_json(const nlohmann::json& j, Params base) {
  if (!j.is_object()) throw InvalidParameter("config must be a JSON object");
  auto number = [&j](const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number()) throw InvalidParameter(std::string("config key '") + key + "' must be a number");
    return v.get<double>();
  };
  for (const auto& [key, _] : j.items()) {
    if (key != "gamma0" && key != "rabi_re" && key != "rabi_im" && key != "detuning" && key != "vic")
      throw InvalidParameter("unknown config key '" + key + "'");
  }
  Params p = base;
  if (j.contains("gamma0")) p.gamma0 = number("gamma0");
  double re = p.rabi.real(), im = p.rabi.imag();
  if (j.contains("rabi_re")) re = number("rabi_re");
  if (j.contains("rabi_im")) im = number("rabi_im");
  p.rabi = {re, im};
  if (j.contains("detuning")) p.detuning = number("detuning");
  if (j.contains("vic")) {
    const auto& v = j.at("vic");
    if (v.is_boolean())
      p.vic = v.get<bool>();
    else if (v.is_number())
      p.vic = vic_from_strength(v.get<double>());
    else
      throw InvalidParameter("config key 'vic' must be 0, 1, true or false");
  }
  validate(p);
  return p;
}

Params load_config(const std::filesystem::path& path, Params base) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter("config " + path.string() + ": " + e.what());
  }
  return params_from_json(j, base);
}

std::filesystem::path write_dataset(const std::filesystem::path& dir, const std::string& stem,
                                    const Table& table, RunManifest manifest,
                                    const nlohmann::json* payload) {
  std::filesystem::create_directories(dir);
  const auto csv = dir / (stem + ".csv");
  {
    std::ofstream out(csv, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + csv.string());
    out << table.to_csv();
  }
  manifest.outputs = {csv.filename().string()};
  if (payload) {
    const auto js = dir / (stem + ".json");
    std::ofstream out(js);
    if (!out) throw std::runtime_error("cannot write " + js.string());
    out << payload->dump(2) << '\n';
    manifest.outputs.push_back(js.filename().string());
  }
  const auto man = dir / (stem + ".manifest.json");
  std::ofstream out(man);
  if (!out) throw std::runtime_error("cannot write " + man.string());
  out << manifest.to_json().dump(2) << '\n';
  return csv;
}

}  // namespace vicsim
