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

#include <string_view>
#include <vector>

#include "z2lpg/evolution.hpp"
#include "z2lpg/lattice.hpp"
#include "z2lpg/model.hpp"
#include "z2lpg/observables.hpp"
#include "z2lpg/sequence.hpp"

namespace z2lpg {

/// Sampled quench observables. `eps_avg` is the running temporal average of
/// the all-sites violation, `eps_raw` the instantaneous interior violation
/// (constraints j >= 1, normalized by L-1), `eps_instant` the instantaneous
/// all-sites violation.
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> sum_g;
  std::vector<double> eps_instant;
  std::vector<double> eps_avg;
  std::vector<double> eps_raw;
  std::vector<double> n_stag;
  std::vector<double> flux;
  std::vector<double> energy;
  std::vector<double> norm;

  std::size_t size() const noexcept { return times.size(); }
  void append(double t, const ObservableSnapshot& obs, double energy_value);
  /// Fills eps_avg from eps_instant.
  void finalize();
};

enum class Engine { dense, krylov };

std::string_view to_string(Engine e);
Engine parse_engine(std::string_view s);

struct QuenchConfig {
  double t_max = 10.0;
  double sample_interval = 0.01;
  Engine engine = Engine::dense;
  int krylov_dim = 30;
  double krylov_tol = 1e-12;

  void validate() const;
  /// Number of samples including t = 0; t_k = k * sample_interval.
  std::size_t n_samples() const;
};

/// Quenches psi0 with the selected Hamiltonian variant.
TimeSeries run_quench(const HilbertSpace& space, const ModelParams& params, const CoeffSequence& seq,
                      const StateVector& psi0, const QuenchConfig& config,
                      HamiltonianVariant variant = HamiltonianVariant::faulty);

/// Quenches psi0 with a prebuilt Hamiltonian. Requires psi0 in the target sector.
TimeSeries run_quench(const HilbertSpace& space, const OperatorMatrix& H, const StateVector& psi0,
                      const QuenchConfig& config);

/// Median of the last `fraction` of a series (at least one sample).
double tail_median(const std::vector<double>& values, double fraction = 0.2);

/// First time after which |v(t) - v_ref| <= tolerance * |v_ref| holds for
/// every later sample, with v_ref the final value.
double settling_time(const std::vector<double>& times, const std::vector<double>& values,
                     double tolerance = 0.2);

}  // namespace z2lpg
