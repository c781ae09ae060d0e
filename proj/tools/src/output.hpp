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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"

namespace z2lpg::cli {

inline constexpr int kFormatVersion = 1;

/// Metadata identifying one run within an experiment (V, variant, dt, ...).
struct RunInfo {
  std::string label;     // file-name suffix, e.g. "V16_faulty"
  nlohmann::json fields;  // object
};

struct ScanRow {
  double dt = 0.0;
  double V = 0.0;
  double eps_final = 0.0;
};

struct AuditRow {
  int n_sites = 0;
  ComplianceReport report;
  std::uint64_t resonant = 0;
  Rational fraction;
};

/// printf("%.17g").
std::string format_number(double x);

std::string timeseries_csv(const ExperimentConfig& config, const RunInfo& run, const TimeSeries& ts);
std::string timeseries_json(const ExperimentConfig& config, const RunInfo& run, const TimeSeries& ts);
std::string scan_csv(const ExperimentConfig& config, const std::vector<ScanRow>& rows);
std::string scan_json(const ExperimentConfig& config, const std::vector<ScanRow>& rows);
std::string audit_csv(const ExperimentConfig& config, const std::vector<AuditRow>& rows);
std::string audit_json(const ExperimentConfig& config, const std::vector<AuditRow>& rows);

/// Writes through a temporary file in the same directory and renames it
/// into place, so readers never observe a partial file.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace z2lpg::cli
