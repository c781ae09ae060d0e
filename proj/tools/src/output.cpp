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


#include "output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace z2lpg::cli {

namespace {

nlohmann::json config_json(const ExperimentConfig& c) {
  using nlohmann::json;
  json j;
  j["name"] = c.name;
  j["mode"] = std::string(to_string(c.mode));
  j["lattice"] = {{"L", c.lattice.n_matter},
                  {"boundary", std::string(to_string(c.lattice.boundary))},
                  {"target_sector", c.lattice.target_sector}};
  if (!c.particle_number) j["lattice"]["particle_number"] = "auto";
  else if (*c.particle_number < 0) j["lattice"]["particle_number"] = "full";
  else j["lattice"]["particle_number"] = *c.particle_number;
  if (c.state.pattern) {
    j["state"] = std::string(to_string(*c.state.pattern));
  } else {
    j["state"] = {{"occupations", c.state.explicit_state.occupations},
                  {"links", c.state.explicit_state.links}};
  }
  std::vector<std::string> variants;
  for (auto v : c.variants) variants.emplace_back(to_string(v));
  j["model"] = {{"J", c.params.J},
                {"h", c.params.h},
                {"lambda", c.params.lambda},
                {"V", c.V_values},
                {"alphas", c.params.alphas},
                {"error_model", std::string(to_string(c.params.error_model))},
                {"variants", variants}};
  j["sequence"] = c.sequence;
  j["evolution"] = {{"t_max", c.quench.t_max},
                    {"sample_interval", c.quench.sample_interval},
                    {"engine", c.auto_engine ? std::string("auto") : std::string(to_string(c.quench.engine))},
                    {"krylov_dim", c.quench.krylov_dim},
                    {"krylov_tol", c.quench.krylov_tol}};
  j["circuit"] = {{"dt", c.dt_values},
                  {"steps", c.n_steps},
                  {"sample_every", c.sample_every},
                  {"t_final", c.t_final},
                  {"compare_analog", c.compare_analog}};
  j["audit"] = {{"L", c.audit.sizes}};
  j["output"] = {{"format", std::string(to_string(c.format))}};
  return j;
}

nlohmann::json envelope(const ExperimentConfig& c) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["config_hash"] = config_hash(c);
  j["config"] = config_json(c);
  return j;
}

void comment_header(std::ostringstream& o, const ExperimentConfig& c) {
  o << "# format_version: " << kFormatVersion << "\n";
  o << "# config_hash: " << config_hash(c) << "\n";
  o << "# config:\n";
  std::istringstream yaml(to_yaml(c));
  for (std::string line; std::getline(yaml, line);) o << "#   " << line << "\n";
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string timeseries_csv(const ExperimentConfig& c, const RunInfo& run, const TimeSeries& ts) {
  std::ostringstream o;
  comment_header(o, c);
  o << "# run: " << run.fields.dump() << "\n";
  o << "t,sumG,eps_avg,eps_raw,n_stag,E,energy,norm\n";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    o << format_number(ts.times[i]) << ',' << format_number(ts.sum_g[i]) << ','
      << format_number(ts.eps_avg[i]) << ',' << format_number(ts.eps_raw[i]) << ','
      << format_number(ts.n_stag[i]) << ',' << format_number(ts.flux[i]) << ','
      << format_number(ts.energy[i]) << ',' << format_number(ts.norm[i]) << "\n";
  }
  return o.str();
}

std::string timeseries_json(const ExperimentConfig& c, const RunInfo& run, const TimeSeries& ts) {
  auto j = envelope(c);
  j["run"] = run.fields;
  j["series"] = {{"t", ts.times},       {"sumG", ts.sum_g}, {"eps_avg", ts.eps_avg},
                 {"eps_raw", ts.eps_raw}, {"n_stag", ts.n_stag}, {"E", ts.flux},
                 {"energy", ts.energy},  {"norm", ts.norm}};
  return j.dump(2) + "\n";
}

std::string scan_csv(const ExperimentConfig& c, const std::vector<ScanRow>& rows) {
  std::ostringstream o;
  comment_header(o, c);
  o << "dt,V,V_ideal,eps_final\n";
  for (const auto& r : rows) {
    o << format_number(r.dt) << ',' << format_number(r.V) << ','
      << format_number(ideal_protection_strength(r.dt)) << ',' << format_number(r.eps_final) << "\n";
  }
  return o.str();
}

std::string scan_json(const ExperimentConfig& c, const std::vector<ScanRow>& rows) {
  auto j = envelope(c);
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    j["rows"].push_back({{"dt", r.dt},
                         {"V", r.V},
                         {"V_ideal", ideal_protection_strength(r.dt)},
                         {"eps_final", r.eps_final}});
  }
  return j.dump(2) + "\n";
}

namespace {

std::string witness_text(const ComplianceReport& r) {
  if (!r.witness) return "";
  std::string s = "(";
  for (std::size_t i = 0; i < r.witness->size(); ++i) {
    if (i) s += ' ';
    const int v = (*r.witness)[i];
    s += v > 0 ? "+1" : (v < 0 ? "-1" : "0");
  }
  return s + ")";
}

}  // namespace

std::string audit_csv(const ExperimentConfig& c, const std::vector<AuditRow>& rows) {
  std::ostringstream o;
  comment_header(o, c);
  o << "L,compliant,witness,resonant_configs,R,R_decimal\n";
  for (const auto& r : rows) {
    o << r.n_sites << ',' << (r.report.compliant ? "true" : "false") << ',' << witness_text(r.report)
      << ',' << r.resonant << ',' << format_rational(r.fraction) << ','
      << format_number(boost::rational_cast<double>(r.fraction)) << "\n";
  }
  return o.str();
}

std::string audit_json(const ExperimentConfig& c, const std::vector<AuditRow>& rows) {
  auto j = envelope(c);
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row{{"L", r.n_sites},
                       {"compliant", r.report.compliant},
                       {"resonant_configs", r.resonant},
                       {"R", format_rational(r.fraction)},
                       {"R_decimal", boost::rational_cast<double>(r.fraction)}};
    row["witness"] = r.report.witness ? nlohmann::json(*r.report.witness) : nlohmann::json(nullptr);
    j["rows"].push_back(row);
  }
  return j.dump(2) + "\n";
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename into '" + path + "': " + ec.message());
  }
}

}  // namespace z2lpg::cli
