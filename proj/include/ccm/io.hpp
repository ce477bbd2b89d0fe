// Run configuration, structured emission (json / csv) and the optional
// append-only result cache used by the command-line front end.
//
// Every emitted artifact carries the fully resolved scheme and the config it
// was produced from, so any output can be reproduced from its own metadata.
// Output is deterministic for a fixed config up to the timestamp field.
#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccm/model.hpp"

namespace ccm::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

// exit codes of the CLI
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNoSolution = 3;
inline constexpr int kExitTolerance = 4;

struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  int n = 41;
  bool log = false;

  std::vector<double> values() const {
    std::vector<double> v;
    if (n <= 1) {
      v.push_back(lo);
      return v;
    }
    for (int i = 0; i < n; ++i) {
      if (log)
        v.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
      else
        v.push_back(lo + (hi - lo) * double(i) / (n - 1));
    }
    return v;
  }

  // "lo:hi:n" or "lo:hi:n:log"
  static GridSpec parse(const std::string& text) {
    GridSpec g;
    std::istringstream ss(text);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() < 3 || parts.size() > 4)
      throw std::invalid_argument("grid spec must be lo:hi:n[:log]");
    g.lo = std::stod(parts[0]);
    g.hi = std::stod(parts[1]);
    g.n = std::stoi(parts[2]);
    if (parts.size() == 4) {
      if (parts[3] != "log") throw std::invalid_argument("grid spec suffix must be 'log'");
      g.log = true;
      if (!(g.lo > 0.0)) throw std::invalid_argument("log grid requires lo > 0");
    }
    if (g.n < 1) throw std::invalid_argument("grid spec needs n >= 1");
    return g;
  }
};

struct RunConfig {
  std::string command;
  double M = 1.0;
  double G = 2.0;
  double c = 1.0;
  double m = 1.0;            // bare units
  double lambda = 0.0;       // bare units
  std::string units = "physical";  // or "bare"
  std::string channel = "isoscalar";
  std::string c1_variant = "corrected";
  int modes = 2;
  double omega_volume = 1.0;
  double dk = 1.0;
  std::optional<GridSpec> grid;
  std::string format = "json";  // or "csv"
  std::string out = "-";
  std::string cache;
  int jobs = 0;  // 0 = hardware concurrency
  int wf_samples = 0;

  json to_json() const {
    json j;
    j["command"] = command;
    j["units"] = units;
    if (units == "bare") {
      j["m"] = m;
      j["lambda"] = lambda;
    } else {
      j["M"] = M;
      j["G"] = G;
    }
    j["c"] = c;
    j["channel"] = channel;
    j["c1_variant"] = c1_variant;
    j["modes"] = modes;
    j["omega_volume"] = omega_volume;
    j["dk"] = dk;
    if (grid) j["grid"] = {{"lo", grid->lo}, {"hi", grid->hi}, {"n", grid->n}, {"log", grid->log}};
    j["wf_samples"] = wf_samples;
    return j;
  }
};

inline json scheme_to_json(const ModelScheme& s) {
  json j;
  j["M"] = s.M;
  j["G"] = s.G;
  j["g"] = s.g;
  j["c"] = s.c;
  j["Lambda"] = s.Lambda;
  j["k2_avg"] = s.k2_avg;
  j["Vstar_inv"] = s.Vstar_inv;
  j["bare_m"] = s.bare.m;
  j["bare_lambda"] = s.bare.lambda;
  return j;
}

struct Emission {
  json metadata;                   // version, config echo, timestamp, scheme
  std::vector<std::string> columns;
  std::vector<json> rows;
};

inline Emission make_emission(const RunConfig& cfg, std::vector<std::string> columns) {
  Emission e;
  e.metadata["tool"] = "ccm";
  e.metadata["version"] = kVersion;
  e.metadata["config"] = cfg.to_json();
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  e.metadata["timestamp_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  e.columns = std::move(columns);
  return e;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string csv_field(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find(',') != std::string::npos || s.find('"') != std::string::npos) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    q += '"';
    return q;
  }
  return s;
}

inline std::string to_csv(const Emission& e) {
  std::ostringstream os;
  for (std::size_t i = 0; i < e.columns.size(); ++i) {
    if (i) os << ',';
    os << e.columns[i];
  }
  os << '\n';
  for (const json& row : e.rows) {
    for (std::size_t i = 0; i < e.columns.size(); ++i) {
      if (i) os << ',';
      if (row.contains(e.columns[i])) os << csv_field(row.at(e.columns[i]));
    }
    os << '\n';
  }
  return os.str();
}

inline std::string to_json_text(const Emission& e) {
  json root;
  root["metadata"] = e.metadata;
  root["data"] = json::array();
  for (const json& row : e.rows) root["data"].push_back(row);
  return root.dump(2) + "\n";
}

inline std::string render(const Emission& e, const std::string& format) {
  if (format == "csv") return to_csv(e);
  if (format == "json") return to_json_text(e);
  throw std::invalid_argument("format must be json or csv");
}

// ---------------------------------------------------------------------------
// Optional append-only result cache: one json line per computed config, keyed
// by a hash of the computation-relevant fields.
// ---------------------------------------------------------------------------

inline std::string cache_key(const RunConfig& cfg) {
  const std::string canonical = cfg.to_json().dump();
  return std::to_string(std::hash<std::string>{}(canonical));
}

inline std::optional<json> cache_lookup(const std::string& path, const std::string& key) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  std::optional<json> hit;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) continue;
    if (j.value("key", std::string()) == key) hit = j;  // last entry wins
  }
  return hit;
}

inline void cache_append(const std::string& path, const std::string& key, const RunConfig& cfg,
                         const std::vector<json>& rows) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cache: cannot open " + path + " for append");
  json j;
  j["key"] = key;
  j["config"] = cfg.to_json();
  j["rows"] = rows;
  out << j.dump() << '\n';
}

}  // namespace ccm::io
