// Copyright 2026 The z2lpg Authors
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


#include "config.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "z2lpg/errors.hpp"

namespace z2lpg::cli {

ConfigError::ConfigError(const std::string& field, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (field.empty() ? std::string() : "field '" + field + "': ") + message),
      field_(field),
      line_(line) {}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::analog: return "analog";
    case Mode::circuit: return "circuit";
    case Mode::scan: return "scan";
    case Mode::audit: return "audit";
  }
  return "?";
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

OutputFormat parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format '" + std::string(s) + "' (csv|json)");
}

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

// Runs `fn`, rewrapping library exceptions as ConfigError at `node`.
template <class Fn>
auto guarded(const YAML::Node& node, const std::string& field, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const YAML::Exception& e) {
    throw ConfigError(field, line_of(node), e.msg);
  } catch (const std::exception& e) {
    throw ConfigError(field, line_of(node), e.what());
  }
}

void check_keys(const YAML::Node& map, const std::string& field, const std::set<std::string>& allowed) {
  if (!map.IsMap()) throw ConfigError(field, line_of(map), "expected a mapping");
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError(join(field, key), line_of(kv.first), "unknown key");
  }
}

template <class T>
T scalar(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) throw ConfigError(field, line_of(n), "expected a scalar");
  return guarded(n, field, [&] { return n.as<T>(); });
}

template <class T>
std::vector<T> scalar_or_list(const YAML::Node& n, const std::string& field) {
  std::vector<T> out;
  if (n.IsSequence()) {
    for (std::size_t i = 0; i < n.size(); ++i) {
      out.push_back(scalar<T>(n[i], field + "[" + std::to_string(i) + "]"));
    }
  } else {
    out.push_back(scalar<T>(n, field));
  }
  if (out.empty()) throw ConfigError(field, line_of(n), "empty list");
  return out;
}

std::string fmt(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

template <class T, class F>
std::string flow(const std::vector<T>& v, F&& f) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += f(v[i]);
  }
  return out + "]";
}

void parse_lattice(const YAML::Node& n, ExperimentConfig& c) {
  check_keys(n, "lattice", {"L", "boundary", "target_sector", "particle_number"});
  int L = c.lattice.n_matter;
  Boundary b = c.lattice.boundary;
  if (n["L"]) L = scalar<int>(n["L"], "lattice.L");
  if (n["boundary"]) {
    b = guarded(n["boundary"], "lattice.boundary",
                [&] { return parse_boundary(n["boundary"].as<std::string>()); });
  }
  c.lattice = LatticeSpec::uniform(L, b);
  if (n["target_sector"]) {
    c.lattice.target_sector = scalar_or_list<int>(n["target_sector"], "lattice.target_sector");
  }
  guarded(n, "lattice", [&] { c.lattice.validate(); });
  if (n["particle_number"]) {
    const auto& pn = n["particle_number"];
    const auto text = scalar<std::string>(pn, "lattice.particle_number");
    if (text == "auto") {
      c.particle_number.reset();
    } else if (text == "full") {
      c.particle_number = -1;
    } else {
      c.particle_number = scalar<int>(pn, "lattice.particle_number");
    }
  }
}

void parse_state(const YAML::Node& n, ExperimentConfig& c) {
  if (n.IsScalar()) {
    c.state.pattern = guarded(n, "state", [&] { return parse_pattern(n.as<std::string>()); });
    return;
  }
  check_keys(n, "state", {"occupations", "links"});
  if (!n["occupations"] || !n["links"]) {
    throw ConfigError("state", line_of(n), "explicit states need both 'occupations' and 'links'");
  }
  c.state.pattern.reset();
  c.state.explicit_state.occupations = scalar_or_list<int>(n["occupations"], "state.occupations");
  c.state.explicit_state.links = scalar_or_list<int>(n["links"], "state.links");
}

void parse_model(const YAML::Node& n, ExperimentConfig& c) {
  check_keys(n, "model", {"J", "h", "lambda", "V", "alphas", "error_model", "variants"});
  if (n["J"]) c.params.J = scalar<double>(n["J"], "model.J");
  if (n["h"]) c.params.h = scalar<double>(n["h"], "model.h");
  if (n["lambda"]) c.params.lambda = scalar<double>(n["lambda"], "model.lambda");
  if (n["V"]) c.V_values = scalar_or_list<double>(n["V"], "model.V");
  if (n["alphas"]) {
    const auto a = scalar_or_list<double>(n["alphas"], "model.alphas");
    if (a.size() != 4) throw ConfigError("model.alphas", line_of(n["alphas"]), "need exactly 4 values");
    std::copy(a.begin(), a.end(), c.params.alphas.begin());
  }
  if (n["error_model"]) {
    c.params.error_model = guarded(n["error_model"], "model.error_model",
                                   [&] { return parse_error_model(n["error_model"].as<std::string>()); });
  }
  if (n["variants"]) {
    c.variants.clear();
    for (const auto& s : scalar_or_list<std::string>(n["variants"], "model.variants")) {
      c.variants.push_back(guarded(n["variants"], "model.variants", [&] { return parse_variant(s); }));
    }
  }
}

void parse_evolution(const YAML::Node& n, ExperimentConfig& c) {
  check_keys(n, "evolution", {"t_max", "sample_interval", "engine", "krylov_dim", "krylov_tol"});
  if (n["t_max"]) c.quench.t_max = scalar<double>(n["t_max"], "evolution.t_max");
  if (n["sample_interval"]) {
    c.quench.sample_interval = scalar<double>(n["sample_interval"], "evolution.sample_interval");
  }
  if (n["engine"]) {
    const auto e = scalar<std::string>(n["engine"], "evolution.engine");
    c.auto_engine = e == "auto";
    if (!c.auto_engine) c.quench.engine = guarded(n["engine"], "evolution.engine", [&] { return parse_engine(e); });
  }
  if (n["krylov_dim"]) c.quench.krylov_dim = scalar<int>(n["krylov_dim"], "evolution.krylov_dim");
  if (n["krylov_tol"]) c.quench.krylov_tol = scalar<double>(n["krylov_tol"], "evolution.krylov_tol");
}

void parse_circuit(const YAML::Node& n, ExperimentConfig& c) {
  check_keys(n, "circuit", {"dt", "steps", "sample_every", "t_final", "compare_analog"});
  if (n["dt"]) c.dt_values = scalar_or_list<double>(n["dt"], "circuit.dt");
  if (n["steps"]) c.n_steps = scalar<int>(n["steps"], "circuit.steps");
  if (n["sample_every"]) c.sample_every = scalar<int>(n["sample_every"], "circuit.sample_every");
  if (n["t_final"]) c.t_final = scalar<double>(n["t_final"], "circuit.t_final");
  if (n["compare_analog"]) c.compare_analog = scalar<bool>(n["compare_analog"], "circuit.compare_analog");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("", e.mark.line >= 0 ? e.mark.line + 1 : 0, origin + ": " + e.msg);
  }
  ExperimentConfig c;
  if (!root || root.IsNull()) return c;
  check_keys(root, "", {"format_version", "name", "description", "mode", "lattice", "state", "model",
                        "sequence", "evolution", "circuit", "audit", "output"});
  if (root["format_version"]) {
    c.format_version = scalar<int>(root["format_version"], "format_version");
    if (c.format_version != 1) {
      throw ConfigError("format_version", line_of(root["format_version"]), "unsupported version");
    }
  }
  if (root["name"]) c.name = scalar<std::string>(root["name"], "name");
  if (root["description"]) c.description = scalar<std::string>(root["description"], "description");
  if (root["mode"]) {
    const auto m = scalar<std::string>(root["mode"], "mode");
    if (m == "analog") c.mode = Mode::analog;
    else if (m == "circuit") c.mode = Mode::circuit;
    else if (m == "scan") c.mode = Mode::scan;
    else if (m == "audit") c.mode = Mode::audit;
    else throw ConfigError("mode", line_of(root["mode"]), "expected analog|circuit|scan|audit");
  }
  if (root["lattice"]) parse_lattice(root["lattice"], c);
  if (root["state"]) parse_state(root["state"], c);
  if (root["model"]) parse_model(root["model"], c);
  if (root["sequence"]) {
    c.sequence = scalar<std::string>(root["sequence"], "sequence");
    guarded(root["sequence"], "sequence", [&] { return parse_sequence(c.sequence); });
  }
  if (root["evolution"]) parse_evolution(root["evolution"], c);
  if (root["circuit"]) parse_circuit(root["circuit"], c);
  if (root["audit"]) {
    check_keys(root["audit"], "audit", {"L"});
    if (root["audit"]["L"]) c.audit.sizes = scalar_or_list<int>(root["audit"]["L"], "audit.L");
  }
  if (root["output"]) {
    check_keys(root["output"], "output", {"format"});
    if (root["output"]["format"]) {
      const auto& f = root["output"]["format"];
      c.format = guarded(f, "output.format", [&] { return parse_format(f.as<std::string>()); });
    }
  }
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string to_yaml(const ExperimentConfig& c) {
  std::ostringstream o;
  const auto num = [](double x) { return fmt(x); };
  const auto integer = [](int x) { return std::to_string(x); };
  o << "format_version: " << c.format_version << "\n";
  o << "name: \"" << c.name << "\"\n";
  if (!c.description.empty()) o << "description: \"" << c.description << "\"\n";
  o << "mode: " << to_string(c.mode) << "\n";
  o << "lattice:\n";
  o << "  L: " << c.lattice.n_matter << "\n";
  o << "  boundary: " << to_string(c.lattice.boundary) << "\n";
  o << "  target_sector: " << flow(c.lattice.target_sector, integer) << "\n";
  o << "  particle_number: ";
  if (!c.particle_number) o << "auto\n";
  else if (*c.particle_number < 0) o << "full\n";
  else o << *c.particle_number << "\n";
  if (c.state.pattern) {
    o << "state: " << to_string(*c.state.pattern) << "\n";
  } else {
    o << "state:\n";
    o << "  occupations: " << flow(c.state.explicit_state.occupations, integer) << "\n";
    o << "  links: " << flow(c.state.explicit_state.links, integer) << "\n";
  }
  o << "model:\n";
  o << "  J: " << fmt(c.params.J) << "\n";
  o << "  h: " << fmt(c.params.h) << "\n";
  o << "  lambda: " << fmt(c.params.lambda) << "\n";
  o << "  V: " << flow(c.V_values, num) << "\n";
  o << "  alphas: " << flow(std::vector<double>(c.params.alphas.begin(), c.params.alphas.end()), num) << "\n";
  o << "  error_model: " << to_string(c.params.error_model) << "\n";
  o << "  variants: "
    << flow(c.variants, [](HamiltonianVariant v) { return std::string(to_string(v)); }) << "\n";
  o << "sequence: \"" << c.sequence << "\"\n";
  o << "evolution:\n";
  o << "  t_max: " << fmt(c.quench.t_max) << "\n";
  o << "  sample_interval: " << fmt(c.quench.sample_interval) << "\n";
  o << "  engine: " << (c.auto_engine ? std::string("auto") : std::string(to_string(c.quench.engine))) << "\n";
  o << "  krylov_dim: " << c.quench.krylov_dim << "\n";
  o << "  krylov_tol: " << fmt(c.quench.krylov_tol) << "\n";
  o << "circuit:\n";
  o << "  dt: " << flow(c.dt_values, num) << "\n";
  o << "  steps: " << c.n_steps << "\n";
  o << "  sample_every: " << c.sample_every << "\n";
  o << "  t_final: " << fmt(c.t_final) << "\n";
  o << "  compare_analog: " << (c.compare_analog ? "true" : "false") << "\n";
  o << "audit:\n";
  o << "  L: " << flow(c.audit.sizes, integer) << "\n";
  o << "output:\n";
  o << "  format: " << to_string(c.format) << "\n";
  return o.str();
}

void validate(const ExperimentConfig& c) {
  const auto wrap = [](const std::string& field, auto&& fn) {
    try {
      fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const CapacityError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(field, 0, e.what());
    }
  };
  wrap("lattice", [&] { c.lattice.validate(); });
  if (c.mode == Mode::audit) {
    wrap("sequence", [&] { parse_sequence(c.sequence); });
    for (int L : c.audit.sizes) {
      if (L < 1) throw ConfigError("audit.L", 0, "sizes must be positive");
    }
    return;
  }
  wrap("model", [&] {
    ModelParams p = c.params;
    p.V = 0.0;
    p.validate();
  });
  for (double V : c.V_values) {
    if (!(V >= 0.0)) throw ConfigError("model.V", 0, "V must be non-negative");
  }
  wrap("sequence", [&] { parse_sequence(c.sequence); });
  if (c.particle_number && *c.particle_number > c.lattice.n_matter) {
    throw ConfigError("lattice.particle_number", 0, "exceeds the number of sites");
  }
  if (!c.state.pattern) {
    const auto& s = c.state.explicit_state;
    const auto L = static_cast<std::size_t>(c.lattice.n_matter);
    if (s.occupations.size() != L || s.links.size() != L) {
      throw ConfigError("state", 0, "explicit state length must equal lattice.L");
    }
  }
  if (c.mode == Mode::analog) {
    wrap("evolution", [&] { c.quench.validate(); });
  } else {
    if (c.lattice.boundary != Boundary::open) {
      throw ConfigError("lattice.boundary", 0, "circuit runs need open boundaries");
    }
    for (double dt : c.dt_values) {
      if (!(dt > 0.0)) throw ConfigError("circuit.dt", 0, "dt must be positive");
    }
    if (c.n_steps < 1) throw ConfigError("circuit.steps", 0, "need at least one step");
    if (c.sample_every < 1) throw ConfigError("circuit.sample_every", 0, "must be at least 1");
    if (c.mode == Mode::scan && !(c.t_final > 0.0)) {
      throw ConfigError("circuit.t_final", 0, "must be positive");
    }
    if (c.mode == Mode::scan) {
      for (double V : c.V_values) {
        if (!(V > 0.0)) throw ConfigError("model.V", 0, "scan values of V must be positive");
      }
    }
    if (c.compare_analog) wrap("evolution", [&] { c.quench.validate(); });
  }
}

std::string config_hash(const ExperimentConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : to_yaml(c)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CoeffSequence resolve_sequence(const ExperimentConfig& c) {
  try {
    return parse_sequence(c.sequence);
  } catch (const std::exception& e) {
    throw ConfigError("sequence", 0, e.what());
  }
}

ProductState resolve_state(const ExperimentConfig& c) {
  if (!c.state.pattern) return c.state.explicit_state;
  try {
    return named_pattern(c.lattice, *c.state.pattern);
  } catch (const std::exception& e) {
    throw ConfigError("state", 0, e.what());
  }
}

HilbertSpace resolve_space(const ExperimentConfig& c) {
  std::optional<int> n;
  if (!c.particle_number) n = resolve_state(c).particle_number();
  else if (*c.particle_number >= 0) n = c.particle_number;
  return HilbertSpace(c.lattice, n);
}

}  // namespace z2lpg::cli
