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

#include <span>
#include <vector>

#include "z2lpg/lattice.hpp"
#include "z2lpg/operator.hpp"

namespace z2lpg {

enum class ViolationMode {
  all_sites,  // 1 - (1/L) sum_j g_j^tar <G_j>
  interior,   // 1 - 1/(L-1) sum_{j>=1} g_j^tar <G_j>   (0-based j; skips the first site)
};

struct ObservableSnapshot {
  double sum_generators = 0.0;  // sum_j <G_j>
  double violation = 0.0;       // all_sites mode
  double violation_interior = 0.0;
  double staggered_occupation = 0.0;
  double electric_flux = 0.0;
  double norm = 0.0;
};

/// Diagonal observables, precomputed per basis state so each evaluation is a
/// single O(D) pass over |psi_i|^2.
///
/// Staggered occupation uses (1/L) sum_j (-1)^j <n_j> with the site label j
/// counted from 1, so the first site carries weight -1.
class ObservableEvaluator {
 public:
  explicit ObservableEvaluator(const HilbertSpace& space);

  ObservableSnapshot evaluate(const StateVector& psi) const;

  double violation(const StateVector& psi, ViolationMode mode) const;
  double staggered_occupation(const StateVector& psi) const;
  double electric_flux(const StateVector& psi) const;
  /// <G_j> for every site.
  std::vector<double> generator_expectations(const StateVector& psi) const;

 private:
  double weighted(const StateVector& psi, const Eigen::VectorXd& w) const;

  const HilbertSpace* space_;
  Eigen::VectorXd sum_g_;
  Eigen::VectorXd weighted_all_;
  Eigen::VectorXd weighted_interior_;
  Eigen::VectorXd n_stag_;
  Eigen::VectorXd flux_;
};

double gauge_violation_instant(const HilbertSpace& space, const StateVector& psi,
                               ViolationMode mode = ViolationMode::all_sites);
double staggered_occupation(const HilbertSpace& space, const StateVector& psi);
double electric_flux(const HilbertSpace& space, const StateVector& psi);

/// eps(t_k) = (1/t_k) int_0^{t_k} v(s) ds by the cumulative trapezoidal rule,
/// with eps(0) = 0. `times` must start at 0 and increase strictly.
std::vector<double> temporal_average(std::span<const double> instantaneous,
                                     std::span<const double> times);

}  // namespace z2lpg
