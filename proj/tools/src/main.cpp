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


#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "presets.hpp"
#include "z2lpg/errors.hpp"

using namespace z2lpg;
using namespace z2lpg::cli;

namespace {

struct Overrides {
  std::string preset;
  std::string config_path;
  std::string out = ".";
  std::string format;
  int jobs = 1;
  std::vector<double> V;
  std::optional<double> lambda;
  std::vector<double> dt;
  std::optional<int> steps;
  std::optional<int> L;
  std::string seq;
  std::string state;
  std::optional<double> t_max;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--preset", o.preset, "Start from a named preset (see `presets`)");
  cmd->add_option("--config", o.config_path, "YAML experiment file; applied after --preset");
  cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--jobs", o.jobs, "Parallel runs")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--seq", o.seq, "Coefficient sequence: preset name or p/q list");
  cmd->add_option("--L", o.L, "Number of matter sites")->check(CLI::Range(1, 31));
}

void add_physics(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--V", o.V, "Protection strength(s)")->delimiter(',');
  cmd->add_option("--lambda", o.lambda, "Error strength");
  cmd->add_option("--state", o.state, "Initial state pattern")
      ->check(CLI::IsMember({"staggered", "cdw", "domain_wall"}));
}

ExperimentConfig resolve(const Overrides& o, Mode mode, const std::string& command) {
  ExperimentConfig c;
  c.mode = mode;
  if (!o.preset.empty()) {
    const Preset* p = find_preset(o.preset);
    if (!p) throw ConfigError("--preset", 0, "unknown preset '" + o.preset + "'");
    c = parse_config(std::string(p->yaml), "preset " + o.preset);
    if (c.mode != mode) {
      throw ConfigError("--preset", 0,
                        "preset '" + o.preset + "' has mode '" + std::string(to_string(c.mode)) +
                            "' and cannot run under " + command);
    }
  }
  if (!o.config_path.empty()) {
    c = load_config_file(o.config_path);
    if (c.mode != mode) {
      throw ConfigError("mode", 0, "config has mode '" + std::string(to_string(c.mode)) +
                                       "'; " + command + " needs '" +
                                       std::string(to_string(mode)) + "'");
    }
  }
  if (o.L) {
    const int g = c.lattice.target_sector.empty() ? 1 : c.lattice.target_sector.front();
    c.lattice = LatticeSpec::uniform(*o.L, c.lattice.boundary, g);
    if (mode == Mode::audit) c.audit.sizes = {*o.L};
  }
  if (!o.V.empty()) c.V_values = o.V;
  if (o.lambda) c.params.lambda = *o.lambda;
  if (!o.dt.empty()) c.dt_values = o.dt;
  if (o.steps) c.n_steps = *o.steps;
  if (!o.seq.empty()) c.sequence = o.seq;
  if (!o.state.empty()) c.state.pattern = parse_pattern(o.state);
  if (o.t_max) c.quench.t_max = *o.t_max;
  if (!o.format.empty()) c.format = parse_format(o.format);
  if (mode == Mode::circuit || mode == Mode::scan) {
    if (o.preset.empty() && o.config_path.empty()) {
      c.lattice = LatticeSpec::uniform(o.L.value_or(6), Boundary::open);
      c.params.error_model = ErrorModel::circuit;
      c.sequence = o.seq.empty() ? "elevenths" : o.seq;
    }
  }
  validate(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Z2 lattice gauge theory with local pseudogenerator protection"};
  app.require_subcommand(1);

  Overrides o;
  std::vector<int> audit_sizes;
  bool show_yaml = false;
  std::string show_name;

  auto* analog = app.add_subcommand("quench-analog", "Continuous-time quench (ED or Lanczos)");
  add_common(analog, o);
  add_physics(analog, o);
  analog->add_option("--t-max", o.t_max, "Evolution time");

  auto* circuit = app.add_subcommand("quench-circuit", "Trotterized circuit quench");
  add_common(circuit, o);
  add_physics(circuit, o);
  circuit->add_option("--dt", o.dt, "Trotter step(s)")->delimiter(',');
  circuit->add_option("--steps", o.steps, "Number of Trotter steps")->check(CLI::PositiveNumber);

  auto* scan = app.add_subcommand("scan-v", "Final-time circuit violation versus V");
  add_common(scan, o);
  add_physics(scan, o);
  scan->add_option("--dt", o.dt, "Trotter step(s)")->delimiter(',');

  auto* audit = app.add_subcommand("sequence-audit", "Compliance and resonant fraction of a sequence");
  add_common(audit, o);
  audit->add_option("--sizes", audit_sizes, "Chain lengths to audit")->delimiter(',');

  auto* list = app.add_subcommand("presets", "List or print the bundled presets");
  list->add_option("name", show_name, "Preset to print");
  list->add_flag("--yaml", show_yaml, "Print the resolved configuration instead of the source");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (list->parsed()) {
      if (show_name.empty()) {
        for (const auto& p : presets()) {
          const auto c = parse_config(std::string(p.yaml), std::string(p.name));
          std::cout << p.name << "\t" << to_string(c.mode) << "\t" << c.description << "\n";
        }
        return kOk;
      }
      const Preset* p = find_preset(show_name);
      if (!p) throw ConfigError("name", 0, "unknown preset '" + show_name + "'");
      if (show_yaml) std::cout << to_yaml(parse_config(std::string(p->yaml), show_name));
      else std::cout << p->yaml;
      return kOk;
    }

    ExperimentConfig c;
    if (analog->parsed()) c = resolve(o, Mode::analog, "quench-analog");
    else if (circuit->parsed()) c = resolve(o, Mode::circuit, "quench-circuit");
    else if (scan->parsed()) c = resolve(o, Mode::scan, "scan-v");
    else {
      c = resolve(o, Mode::audit, "sequence-audit");
      if (!audit_sizes.empty()) c.audit.sizes = audit_sizes;
      validate(c);
    }
    RunOptions opts;
    opts.out_dir = o.out;
    opts.jobs = o.jobs;
    run_experiment(c, opts, std::cerr);
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const SectorError& e) {
    std::cerr << "config error: " << e.what();
    if (!e.violated_sites().empty()) {
      std::cerr << " (violated sites:";
      for (int s : e.violated_sites()) std::cerr << ' ' << s;
      std::cerr << ")";
    }
    std::cerr << "\n";
    return kConfigError;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kCapacityError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
