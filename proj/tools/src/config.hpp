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


// Experiment configuration: a nested YAML document resolved into plain
// structs. Flags given on the command line are applied on top.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "z2lpg/circuit.hpp"
#include "z2lpg/initial_state.hpp"
#include "z2lpg/lattice.hpp"
#include "z2lpg/model.hpp"
#include "z2lpg/quench.hpp"
#include "z2lpg/sequence.hpp"

namespace z2lpg::cli {

/// Raised for malformed or inconsistent configuration. Carries the source
/// line (1-based, 0 if unknown) and the dotted field path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, int line, const std::string& message);
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

enum class Mode { analog, circuit, scan, audit };
std::string_view to_string(Mode m);

enum class OutputFormat { csv, json };
std::string_view to_string(OutputFormat f);
OutputFormat parse_format(std::string_view s);

struct StateSpec {
  std::optional<StatePattern> pattern = StatePattern::staggered;
  ProductState explicit_state;  // used when pattern is empty
};

struct AuditSpec {
  std::vector<int> sizes{4, 8, 12, 16};
};

struct ExperimentConfig {
  int format_version = 1;
  std::string name = "run";
  std::string description;
  Mode mode = Mode::analog;

  LatticeSpec lattice = LatticeSpec::uniform(4, Boundary::periodic);
  /// -1 selects the unrestricted space; unset means the initial state's filling.
  std::optional<int> particle_number;
  StateSpec state;

  ModelParams params;  // params.V is ignored; see V_values
  std::vector<double> V_values{0.0};
  std::vector<HamiltonianVariant> variants{HamiltonianVariant::faulty};
  std::string sequence = "seventeenths";

  QuenchConfig quench;
  bool auto_engine = true;

  std::vector<double> dt_values{0.2};
  int n_steps = 100;
  int sample_every = 1;
  double t_final = 20.0;  // scan mode
  bool compare_analog = false;

  AuditSpec audit;

  OutputFormat format = OutputFormat::csv;
};

/// Parses a YAML document. `origin` names the source in diagnostics.
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<config>");
ExperimentConfig load_config_file(const std::string& path);

/// Canonical YAML for the fully resolved configuration. parse_config of the
/// result reproduces the same configuration.
std::string to_yaml(const ExperimentConfig& config);

/// Cross-field checks; throws ConfigError.
void validate(const ExperimentConfig& config);

/// FNV-1a 64 of the canonical YAML, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

CoeffSequence resolve_sequence(const ExperimentConfig& config);
ProductState resolve_state(const ExperimentConfig& config);
HilbertSpace resolve_space(const ExperimentConfig& config);

}  // namespace z2lpg::cli
