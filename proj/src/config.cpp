// Copyright 2026 The mstdvp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mstdvp/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace mstdvp::cli {

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Exact: return "exact";
    case RunMode::Gaussified: return "gaussified";
    case RunMode::Tdvp: return "tdvp";
    case RunMode::Compare: return "compare";
    case RunMode::VerifyTheorem1: return "verify-theorem1";
  }
  return "?";
}

std::string to_string(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "json-lines";
}

RunMode parse_mode(const std::string& name) {
  if (name == "exact") return RunMode::Exact;
  if (name == "gaussified") return RunMode::Gaussified;
  if (name == "tdvp") return RunMode::Tdvp;
  if (name == "compare") return RunMode::Compare;
  if (name == "verify-theorem1") return RunMode::VerifyTheorem1;
  throw ConfigError("unknown mode '" + name + "'");
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

struct RawValue {
  std::string value;
  int line;
  bool consumed = false;
};

class KeyTable {
 public:
  void insert(const std::string& section, const std::string& key,
              const std::string& value, int line) {
    const std::string full = section + "." + key;
    auto [it, fresh] = entries_.try_emplace(full, RawValue{value, line});
    if (!fresh)
      throw ConfigError("duplicate key '" + full + "' (first defined at line " +
                            std::to_string(it->second.line) + ")",
                        line);
  }

  const RawValue* find(const std::string& full) {
    auto it = entries_.find(full);
    if (it == entries_.end()) return nullptr;
    it->second.consumed = true;
    return &it->second;
  }

  void reject_unconsumed() const {
    for (const auto& [key, raw] : entries_)
      if (!raw.consumed)
        throw ConfigError("unknown key '" + key + "'", raw.line);
  }

 private:
  std::map<std::string, RawValue> entries_;
};

double parse_double(const RawValue& raw, const std::string& key) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(raw.value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" +
                          raw.value + "'",
                      raw.line);
  }
  if (pos != raw.value.size())
    throw ConfigError("key '" + key + "': expected a number, got '" +
                          raw.value + "'",
                      raw.line);
  return v;
}

long parse_int(const RawValue& raw, const std::string& key) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(raw.value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected an integer, got '" +
                          raw.value + "'",
                      raw.line);
  }
  if (pos != raw.value.size())
    throw ConfigError("key '" + key + "': expected an integer, got '" +
                          raw.value + "'",
                      raw.line);
  return v;
}

bool parse_bool(const RawValue& raw, const std::string& key) {
  if (raw.value == "true") return true;
  if (raw.value == "false") return false;
  throw ConfigError("key '" + key + "': expected true/false, got '" +
                        raw.value + "'",
                    raw.line);
}

std::vector<double> parse_alpha_list(const RawValue& raw,
                                     const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(raw.value);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    piece = trim(piece);
    if (piece.empty())
      throw ConfigError("key '" + key + "': empty list element", raw.line);
    out.push_back(parse_double(RawValue{piece, raw.line}, key));
    if (out.back() < 0.0 || out.back() > 1.0)
      throw ConfigError("key '" + key + "': alpha outside [0, 1]", raw.line);
  }
  if (out.empty())
    throw ConfigError("key '" + key + "': empty alpha list", raw.line);
  return out;
}

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  KeyTable table;
  std::string section;
  int line_no = 0;
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("malformed section header", line_no);
      section = trim(line.substr(1, line.size() - 2));
      if (section != "model" && section != "run" && section != "output")
        throw ConfigError("unknown section '" + section + "'", line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError("key '" + key + "' outside any section", line_no);
    if (key.empty()) throw ConfigError("empty key", line_no);
    table.insert(section, key, value, line_no);
  }

  ExperimentConfig cfg;

  const RawValue* model_type = table.find("model.type");
  if (model_type == nullptr)
    throw ConfigError("missing required key 'model.type'");
  if (model_type->value == "hubbard") {
    cfg.model = ExperimentConfig::ModelKind::Hubbard;
  } else if (model_type->value == "file") {
    cfg.model = ExperimentConfig::ModelKind::SpecFile;
  } else {
    throw ConfigError("key 'model.type': expected hubbard or file",
                      model_type->line);
  }

  if (const auto* raw = table.find("model.L")) {
    cfg.hubbard.sites = static_cast<int>(parse_int(*raw, "model.L"));
    if (cfg.hubbard.sites < 2)
      throw ConfigError("key 'model.L': must be >= 2", raw->line);
  }
  if (const auto* raw = table.find("model.J"))
    cfg.hubbard.hopping = parse_double(*raw, "model.J");
  if (const auto* raw = table.find("model.u"))
    cfg.hubbard.interaction = parse_double(*raw, "model.u");
  if (const auto* raw = table.find("model.mu"))
    cfg.hubbard.chemical_potential = parse_double(*raw, "model.mu");
  if (const auto* raw = table.find("model.kappa")) {
    cfg.hubbard.decoherence = parse_double(*raw, "model.kappa");
    if (cfg.hubbard.decoherence < 0.0)
      throw ConfigError("key 'model.kappa': must be >= 0", raw->line);
  }
  if (const auto* raw = table.find("model.periodic"))
    cfg.hubbard.periodic = parse_bool(*raw, "model.periodic");
  if (const auto* raw = table.find("model.path")) cfg.spec_path = raw->value;
  if (cfg.model == ExperimentConfig::ModelKind::SpecFile &&
      cfg.spec_path.empty())
    throw ConfigError("missing required key 'model.path' for model.type=file");

  if (const auto* raw = table.find("run.mode")) {
    try {
      cfg.mode = parse_mode(raw->value);
    } catch (const ConfigError& err) {
      throw ConfigError(err.what(), raw->line);
    }
    cfg.has_mode = true;
  }
  if (const auto* raw = table.find("run.t_final")) {
    cfg.t_final = parse_double(*raw, "run.t_final");
    if (!(cfg.t_final > 0.0))
      throw ConfigError("key 'run.t_final': must be > 0", raw->line);
  }
  if (const auto* raw = table.find("run.dt")) {
    cfg.dt = parse_double(*raw, "run.dt");
    if (!(cfg.dt > 0.0))
      throw ConfigError("key 'run.dt': must be > 0", raw->line);
  }
  if (const auto* raw = table.find("run.sample_interval"))
    cfg.sample_interval = parse_double(*raw, "run.sample_interval");
  if (cfg.sample_interval < cfg.dt)
    throw ConfigError("run.sample_interval must be >= run.dt");
  if (const auto* raw = table.find("run.alpha"))
    cfg.alphas = parse_alpha_list(*raw, "run.alpha");
  if (const auto* raw = table.find("run.seed"))
    cfg.seed = static_cast<std::uint64_t>(parse_int(*raw, "run.seed"));
  if (const auto* raw = table.find("run.norm")) {
    if (raw->value == "frobenius")
      cfg.norm = NormKind::Frobenius;
    else if (raw->value == "spectral")
      cfg.norm = NormKind::Spectral;
    else
      throw ConfigError("key 'run.norm': expected frobenius or spectral",
                        raw->line);
  }
  if (const auto* raw = table.find("run.n_modes")) {
    cfg.n_modes = static_cast<int>(parse_int(*raw, "run.n_modes"));
    if (cfg.n_modes < 1)
      throw ConfigError("key 'run.n_modes': must be >= 1", raw->line);
  }
  if (const auto* raw = table.find("run.n_cases")) {
    cfg.n_cases = static_cast<int>(parse_int(*raw, "run.n_cases"));
    if (cfg.n_cases < 1)
      throw ConfigError("key 'run.n_cases': must be >= 1", raw->line);
  }

  if (const auto* raw = table.find("output.directory"))
    cfg.out_dir = raw->value;
  if (const auto* raw = table.find("output.format")) {
    if (raw->value == "csv")
      cfg.format = OutputFormat::Csv;
    else if (raw->value == "json-lines")
      cfg.format = OutputFormat::JsonLines;
    else
      throw ConfigError("key 'output.format': expected csv or json-lines",
                        raw->line);
  }

  table.reject_unconsumed();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "[model]\n";
  out << "type = "
      << (cfg.model == ExperimentConfig::ModelKind::Hubbard ? "hubbard"
                                                            : "file")
      << "\n";
  if (cfg.model == ExperimentConfig::ModelKind::Hubbard) {
    out << "L = " << cfg.hubbard.sites << "\n";
    out << "J = " << format_double(cfg.hubbard.hopping) << "\n";
    out << "u = " << format_double(cfg.hubbard.interaction) << "\n";
    out << "mu = " << format_double(cfg.hubbard.chemical_potential) << "\n";
    out << "kappa = " << format_double(cfg.hubbard.decoherence) << "\n";
    out << "periodic = " << (cfg.hubbard.periodic ? "true" : "false") << "\n";
  } else {
    out << "path = " << cfg.spec_path << "\n";
  }
  out << "\n[run]\n";
  if (cfg.has_mode) out << "mode = " << to_string(cfg.mode) << "\n";
  out << "t_final = " << format_double(cfg.t_final) << "\n";
  out << "dt = " << format_double(cfg.dt) << "\n";
  out << "sample_interval = " << format_double(cfg.sample_interval) << "\n";
  out << "alpha = ";
  for (std::size_t i = 0; i < cfg.alphas.size(); ++i) {
    if (i > 0) out << ",";
    out << format_double(cfg.alphas[i]);
  }
  out << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "norm = "
      << (cfg.norm == NormKind::Frobenius ? "frobenius" : "spectral") << "\n";
  out << "n_modes = " << cfg.n_modes << "\n";
  out << "n_cases = " << cfg.n_cases << "\n";
  out << "\n[output]\n";
  out << "directory = " << cfg.out_dir << "\n";
  out << "format = " << to_string(cfg.format) << "\n";
  return out.str();
}

}  // namespace mstdvp::cli
