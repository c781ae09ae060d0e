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


#include "commands.hpp"

#include <atomic>
#include <charconv>
#include <exception>
#include <filesystem>
#include <mutex>
#include <ostream>
#include <thread>

namespace z2lpg::cli {

namespace {

std::string short_number(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception is
// rethrown after all workers stop.
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string extension(OutputFormat f) { return f == OutputFormat::csv ? ".csv" : ".json"; }

}  // namespace

std::vector<PlannedRun> plan_runs(const ExperimentConfig& c) {
  std::vector<PlannedRun> runs;
  if (c.mode == Mode::analog) {
    bool adjusted_done = false, ideal_done = false;
    for (double V : c.V_values) {
      for (auto variant : c.variants) {
        PlannedRun r;
        r.kind = PlannedRun::Kind::analog;
        r.variant = variant;
        r.lambda = c.params.lambda;
        r.V = V;
        if (variant == HamiltonianVariant::adjusted) {
          if (adjusted_done) continue;
          adjusted_done = true;
          r.V = 0.0;
          r.info.label = "adjusted";
        } else if (variant == HamiltonianVariant::ideal) {
          if (ideal_done) continue;
          ideal_done = true;
          r.V = 0.0;
          r.info.label = "ideal";
        } else {
          r.info.label = "V" + short_number(V) + "_faulty";
        }
        r.info.fields = {{"kind", "analog"}, {"variant", std::string(to_string(variant))}, {"V", r.V},
                         {"lambda", r.lambda}};
        runs.push_back(std::move(r));
      }
    }
  } else if (c.mode == Mode::circuit) {
    for (double dt : c.dt_values) {
      for (double V : c.V_values) {
        PlannedRun r;
        r.kind = PlannedRun::Kind::circuit;
        r.V = V;
        r.lambda = c.params.lambda;
        r.dt = dt;
        r.info.label = "dt" + short_number(dt) + "_V" + short_number(V) + "_circuit";
        r.info.fields = {{"kind", "circuit"}, {"V", V}, {"lambda", r.lambda}, {"dt", dt}};
        runs.push_back(std::move(r));
      }
      if (c.compare_analog) {
        // Trotterized ideal theory at the same step: the reference the
        // protected circuit should approach.
        PlannedRun r;
        r.kind = PlannedRun::Kind::circuit;
        r.dt = dt;
        r.info.label = "dt" + short_number(dt) + "_ideal_circuit";
        r.info.fields = {{"kind", "circuit"}, {"V", 0.0}, {"lambda", 0.0}, {"dt", dt}};
        runs.push_back(std::move(r));
      }
    }
    if (c.compare_analog) {
      for (double V : c.V_values) {
        PlannedRun r;
        r.kind = PlannedRun::Kind::analog;
        r.V = V;
        r.lambda = c.params.lambda;
        r.info.label = "V" + short_number(V) + "_analog";
        r.info.fields = {{"kind", "analog"}, {"variant", "faulty"}, {"V", V}, {"lambda", r.lambda}};
        runs.push_back(std::move(r));
      }
      PlannedRun r;
      r.kind = PlannedRun::Kind::analog;
      r.variant = HamiltonianVariant::ideal;
      r.info.label = "ideal_analog";
      r.info.fields = {{"kind", "analog"}, {"variant", "ideal"}, {"V", 0.0}, {"lambda", 0.0}};
      runs.push_back(std::move(r));
    }
  }
  return runs;
}

TimeSeries execute_run(const ExperimentConfig& c, const PlannedRun& run) {
  const HilbertSpace space = resolve_space(c);
  const CoeffSequence seq = resolve_sequence(c);
  const StateVector psi0 = build_initial_state(space, resolve_state(c));
  ModelParams params = c.params;
  params.V = run.V;
  params.lambda = run.lambda;

  if (run.kind == PlannedRun::Kind::circuit) {
    CircuitConfig cc;
    cc.dt = run.dt;
    cc.n_steps = c.n_steps;
    cc.params = params;
    cc.sequence = seq;
    cc.sample_every = c.sample_every;
    return run_circuit(space, cc, psi0);
  }

  QuenchConfig q = c.quench;
  if (c.mode == Mode::circuit) {
    // Analog reference for a circuit experiment: same horizon and sampling.
    q.t_max = c.dt_values.front() * c.n_steps;
    q.sample_interval = c.dt_values.front() * c.sample_every;
  }
  if (c.auto_engine) q.engine = space.dimension() <= kDenseDimensionCap ? Engine::dense : Engine::krylov;
  return run_quench(space, params, seq, psi0, q, run.variant);
}

std::vector<ScanRow> execute_scan(const ExperimentConfig& c, int jobs) {
  const HilbertSpace space = resolve_space(c);
  const StateVector psi0 = build_initial_state(space, resolve_state(c));
  std::vector<double> Vs = c.V_values;
  std::sort(Vs.begin(), Vs.end());
  std::vector<ScanRow> rows;
  for (double dt : c.dt_values) {
    for (double V : Vs) rows.push_back({dt, V, 0.0});
  }
  CircuitConfig tmpl;
  tmpl.params = c.params;
  tmpl.sequence = resolve_sequence(c);
  parallel_for(rows.size(), jobs, [&](std::size_t i) {
    CircuitConfig cc = tmpl;
    cc.dt = rows[i].dt;
    rows[i].eps_final = scan_final_violation(space, cc, {rows[i].V}, psi0, c.t_final).front().eps_final;
  });
  return rows;
}

std::vector<AuditRow> execute_audit(const ExperimentConfig& c) {
  const CoeffSequence seq = resolve_sequence(c);
  std::vector<AuditRow> rows;
  for (int L : c.audit.sizes) {
    AuditRow r;
    r.n_sites = L;
    r.report = is_compliant(seq, L);
    r.resonant = count_resonant_configs(seq, L);
    r.fraction = resonance_fraction(seq, L);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::string> run_experiment(const ExperimentConfig& c, const RunOptions& options,
                                        std::ostream& log) {
  validate(c);
  const std::string base = (std::filesystem::path(options.out_dir) / c.name).string();
  const std::string ext = extension(c.format);
  std::vector<std::string> written;

  if (c.mode == Mode::audit) {
    const auto rows = execute_audit(c);
    const std::string path = base + "_audit" + ext;
    write_atomic(path, c.format == OutputFormat::csv ? audit_csv(c, rows) : audit_json(c, rows));
    written.push_back(path);
  } else if (c.mode == Mode::scan) {
    const auto rows = execute_scan(c, options.jobs);
    const std::string path = base + "_scan" + ext;
    write_atomic(path, c.format == OutputFormat::csv ? scan_csv(c, rows) : scan_json(c, rows));
    written.push_back(path);
  } else {
    // Fail fast on the initial state before fanning out.
    build_initial_state(resolve_space(c), resolve_state(c));
    const auto runs = plan_runs(c);
    std::vector<std::string> paths(runs.size());
    std::mutex log_mutex;
    parallel_for(runs.size(), options.jobs, [&](std::size_t i) {
      const TimeSeries ts = execute_run(c, runs[i]);
      paths[i] = base + "_" + runs[i].info.label + ext;
      write_atomic(paths[i], c.format == OutputFormat::csv ? timeseries_csv(c, runs[i].info, ts)
                                                           : timeseries_json(c, runs[i].info, ts));
      std::lock_guard lock(log_mutex);
      log << "  " << runs[i].info.label << ": " << ts.size() << " samples\n";
    });
    written = std::move(paths);
  }
  for (const auto& p : written) log << "wrote " << p << "\n";
  return written;
}

}  // namespace z2lpg::cli
