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

#include "z2lpg/quench.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "z2lpg/errors.hpp"

namespace z2lpg {

void TimeSeries::append(double t, const ObservableSnapshot& obs, double energy_value) {
  times.push_back(t);
  sum_g.push_back(obs.sum_generators);
  eps_instant.push_back(obs.violation);
  eps_raw.push_back(obs.violation_interior);
  n_stag.push_back(obs.staggered_occupation);
  flux.push_back(obs.electric_flux);
  energy.push_back(energy_value);
  norm.push_back(obs.norm);
}

void TimeSeries::finalize() { eps_avg = temporal_average(eps_instant, times); }

std::string_view to_string(Engine e) { return e == Engine::dense ? "dense" : "krylov"; }

Engine parse_engine(std::string_view s) {
  if (s == "dense") return Engine::dense;
  if (s == "krylov") return Engine::krylov;
  throw std::invalid_argument("unknown engine '" + std::string(s) + "'");
}

void QuenchConfig::validate() const {
  if (!(sample_interval > 0.0) || !(t_max >= sample_interval)) {
    throw std::invalid_argument("need 0 < sample_interval <= t_max");
  }
  if (krylov_dim < 4) throw std::invalid_argument("krylov_dim must be at least 4");
  if (!(krylov_tol > 0.0)) throw std::invalid_argument("krylov_tol must be positive");
}

std::size_t QuenchConfig::n_samples() const {
  return static_cast<std::size_t>(std::llround(std::floor(t_max / sample_interval + 1e-9))) + 1;
}

TimeSeries run_quench(const HilbertSpace& space, const OperatorMatrix& H, const StateVector& psi0,
                      const QuenchConfig& config) {
  config.validate();
  if (static_cast<std::size_t>(psi0.size()) != space.dimension()) {
    throw std::invalid_argument("initial state dimension mismatch");
  }
  const double in_sector = build_target_projector(space).expectation(psi0);
  if (std::abs(in_sector - 1.0) > 1e-10) {
    throw SectorError("quench initial state is not in the target sector", {});
  }
  const ObservableEvaluator observables(space);
  const auto record = [&](TimeSeries& ts, double t, const StateVector& psi) {
    ts.append(t, observables.evaluate(psi), H.expectation(psi).real());
  };

  TimeSeries ts;
  const std::size_t n = config.n_samples();
  if (config.engine == Engine::dense) {
    const SpectralPropagator propagator(H);
    const Eigen::VectorXcd components = propagator.project(psi0);
    for (std::size_t k = 0; k < n; ++k) {
      const double t = static_cast<double>(k) * config.sample_interval;
      record(ts, t, k == 0 ? psi0 : propagator.at(components, t));
    }
  } else {
    const KrylovOptions opts{config.krylov_dim, config.krylov_tol, 10};
    StateVector psi = psi0;
    record(ts, 0.0, psi);
    for (std::size_t k = 1; k < n; ++k) {
      psi = evolve_krylov(H, psi, config.sample_interval, opts);
      record(ts, static_cast<double>(k) * config.sample_interval, psi);
    }
  }
  ts.finalize();
  return ts;
}

TimeSeries run_quench(const HilbertSpace& space, const ModelParams& params, const CoeffSequence& seq,
                      const StateVector& psi0, const QuenchConfig& config,
                      HamiltonianVariant variant) {
  return run_quench(space, build_hamiltonian(space, params, seq, variant), psi0, config);
}

double tail_median(const std::vector<double>& values, double fraction) {
  if (values.empty()) throw std::invalid_argument("tail_median of an empty series");
  const auto count = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(values.size()))));
  std::vector<double> tail(values.end() - static_cast<std::ptrdiff_t>(count), values.end());
  std::sort(tail.begin(), tail.end());
  const auto m = tail.size() / 2;
  return tail.size() % 2 ? tail[m] : 0.5 * (tail[m - 1] + tail[m]);
}

double settling_time(const std::vector<double>& times, const std::vector<double>& values,
                     double tolerance) {
  if (times.size() != values.size() || times.empty()) {
    throw std::invalid_argument("settling_time: malformed series");
  }
  const double ref = values.back();
  std::size_t k = values.size();
  while (k > 0 && std::abs(values[k - 1] - ref) <= tolerance * std::abs(ref)) --k;
  return k == values.size() ? times.back() : times[k];
}

}  // namespace z2lpg
