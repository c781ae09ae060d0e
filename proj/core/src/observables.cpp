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

#include "z2lpg/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace z2lpg {

ObservableEvaluator::ObservableEvaluator(const HilbertSpace& space) : space_(&space) {
  const auto D = static_cast<Eigen::Index>(space.dimension());
  const int L = space.n_matter();
  const auto& g = space.spec().target_sector;
  sum_g_.resize(D);
  weighted_all_.resize(D);
  weighted_interior_.resize(D);
  n_stag_.resize(D);
  flux_.resize(D);
  for (Eigen::Index i = 0; i < D; ++i) {
    const auto c = space.config(static_cast<std::size_t>(i));
    double sg = 0.0, wa = 0.0, wi = 0.0, ns = 0.0, fl = 0.0;
    for (int j = 0; j < L; ++j) {
      const int n = space.occupation(c, j);
      const int G = (n ? -1 : 1) * space.left_link_value(c, j) * space.link_value(c, j);
      const int gj = g[static_cast<std::size_t>(j)];
      sg += G;
      wa += gj * G;
      if (j > 0) wi += gj * G;
      ns += (j % 2 == 0 ? -1.0 : 1.0) * n;
      fl += space.link_value(c, j);
    }
    sum_g_[i] = sg;
    weighted_all_[i] = 1.0 - wa / L;
    weighted_interior_[i] = 1.0 - wi / (L - 1);
    n_stag_[i] = ns / L;
    flux_[i] = fl / L;
  }
}

double ObservableEvaluator::weighted(const StateVector& psi, const Eigen::VectorXd& w) const {
  if (psi.size() != w.size()) throw std::invalid_argument("state dimension mismatch");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) acc += w[i] * std::norm(psi[i]);
  return acc;
}

ObservableSnapshot ObservableEvaluator::evaluate(const StateVector& psi) const {
  if (psi.size() != sum_g_.size()) throw std::invalid_argument("state dimension mismatch");
  ObservableSnapshot s;
  double norm2 = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const double p = std::norm(psi[i]);
    norm2 += p;
    s.sum_generators += p * sum_g_[i];
    s.violation += p * weighted_all_[i];
    s.violation_interior += p * weighted_interior_[i];
    s.staggered_occupation += p * n_stag_[i];
    s.electric_flux += p * flux_[i];
  }
  s.norm = std::sqrt(norm2);
  return s;
}

double ObservableEvaluator::violation(const StateVector& psi, ViolationMode mode) const {
  return weighted(psi, mode == ViolationMode::all_sites ? weighted_all_ : weighted_interior_);
}

double ObservableEvaluator::staggered_occupation(const StateVector& psi) const {
  return weighted(psi, n_stag_);
}

double ObservableEvaluator::electric_flux(const StateVector& psi) const {
  return weighted(psi, flux_);
}

std::vector<double> ObservableEvaluator::generator_expectations(const StateVector& psi) const {
  const int L = space_->n_matter();
  std::vector<double> out(static_cast<std::size_t>(L), 0.0);
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const double p = std::norm(psi[i]);
    if (p == 0.0) continue;
    const auto c = space_->config(static_cast<std::size_t>(i));
    for (int j = 0; j < L; ++j) {
      const int G = (space_->occupation(c, j) ? -1 : 1) * space_->left_link_value(c, j) *
                    space_->link_value(c, j);
      out[static_cast<std::size_t>(j)] += p * G;
    }
  }
  return out;
}

double gauge_violation_instant(const HilbertSpace& space, const StateVector& psi,
                               ViolationMode mode) {
  return ObservableEvaluator(space).violation(psi, mode);
}

double staggered_occupation(const HilbertSpace& space, const StateVector& psi) {
  return ObservableEvaluator(space).staggered_occupation(psi);
}

double electric_flux(const HilbertSpace& space, const StateVector& psi) {
  return ObservableEvaluator(space).electric_flux(psi);
}

std::vector<double> temporal_average(std::span<const double> instantaneous,
                                     std::span<const double> times) {
  if (instantaneous.size() != times.size()) {
    throw std::invalid_argument("temporal_average: series and times differ in length");
  }
  std::vector<double> out(times.size(), 0.0);
  if (times.empty()) return out;
  if (times[0] != 0.0) throw std::invalid_argument("temporal_average: times must start at 0");
  double integral = 0.0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double dt = times[k] - times[k - 1];
    if (!(dt > 0.0)) throw std::invalid_argument("temporal_average: times must increase strictly");
    integral += 0.5 * dt * (instantaneous[k] + instantaneous[k - 1]);
    out[k] = integral / times[k];
  }
  return out;
}

}  // namespace z2lpg
