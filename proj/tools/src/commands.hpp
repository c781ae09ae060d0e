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


#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "output.hpp"

namespace z2lpg::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kCapacityError = 3 };

struct RunOptions {
  std::string out_dir = ".";
  int jobs = 1;
};

/// One unit of work of an analog or circuit experiment.
struct PlannedRun {
  enum class Kind { analog, circuit } kind = Kind::analog;
  HamiltonianVariant variant = HamiltonianVariant::faulty;
  double V = 0.0;
  double lambda = 0.0;
  double dt = 0.0;  // circuit only
  RunInfo info;
};

/// Expands V, variant and dt lists into runs in output order. Variants that
/// do not depend on V appear once.
std::vector<PlannedRun> plan_runs(const ExperimentConfig& config);

TimeSeries execute_run(const ExperimentConfig& config, const PlannedRun& run);

std::vector<ScanRow> execute_scan(const ExperimentConfig& config, int jobs = 1);
std::vector<AuditRow> execute_audit(const ExperimentConfig& config);

/// Runs the experiment and writes its files under options.out_dir. Returns
/// the written paths in a deterministic order.
std::vector<std::string> run_experiment(const ExperimentConfig& config, const RunOptions& options,
                                        std::ostream& log);

}  // namespace z2lpg::cli
