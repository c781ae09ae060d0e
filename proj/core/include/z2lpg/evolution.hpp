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

#include <cstddef>

#include "z2lpg/operator.hpp"

namespace z2lpg {

/// Exact propagation e^{-iHt} through a cached eigendecomposition of a dense
/// copy of H. Construction is O(D^3); each evolve() is O(D^2).
class SpectralPropagator {
 public:
  /// Throws std::invalid_argument for non-Hermitian H and CapacityError when
  /// D exceeds `dense_cap`.
  explicit SpectralPropagator(const OperatorMatrix& H, std::size_t dense_cap = kDenseDimensionCap);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(energies_.size()); }
  const Eigen::VectorXd& energies() const noexcept { return energies_; }

  /// Components of psi in the eigenbasis.
  Eigen::VectorXcd project(const StateVector& psi) const;
  /// State at time t given eigenbasis components at t = 0.
  StateVector at(const Eigen::VectorXcd& components, double t) const;

  StateVector evolve(const StateVector& psi0, double t) const { return at(project(psi0), t); }

 private:
  Eigen::VectorXd energies_;
  DenseMatrix vectors_;
};

StateVector evolve_dense(const OperatorMatrix& H, const StateVector& psi0, double t);

struct KrylovOptions {
  int krylov_dim = 30;
  double tol = 1e-12;     // a-posteriori error bound per accepted sub-step
  int max_halvings = 10;  // per sub-step before giving up
};

struct KrylovStats {
  int substeps = 0;
  int matvecs = 0;
};

/// e^{-iH dt} psi by Lanczos projection with full re-orthogonalization. When
/// the residual estimate beta_m |[e^{-iT tau}]_{m,1}| exceeds `tol` the
/// sub-step tau is halved; after `max_halvings` halvings a ConvergenceError
/// is thrown. Sub-steps repeat until the full dt is covered.
StateVector evolve_krylov(const OperatorMatrix& H, const StateVector& psi, double dt,
                          const KrylovOptions& options = {}, KrylovStats* stats = nullptr);

/// Throws std::invalid_argument unless H is flagged and numerically Hermitian.
void require_hermitian(const OperatorMatrix& H);

}  // namespace z2lpg
