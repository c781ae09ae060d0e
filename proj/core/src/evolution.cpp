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

#include "z2lpg/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "z2lpg/errors.hpp"

namespace z2lpg {

void require_hermitian(const OperatorMatrix& H) {
  const double scale = std::max(1.0, max_abs(H));
  if (!H.hermitian() || H.hermiticity_defect() > 1e-12 * scale) {
    throw std::invalid_argument("time evolution requires a Hermitian operator");
  }
}

SpectralPropagator::SpectralPropagator(const OperatorMatrix& H, std::size_t dense_cap) {
  if (H.dimension() > dense_cap) {
    throw CapacityError("dense propagation of dimension " + std::to_string(H.dimension()) +
                        " exceeds the cap of " + std::to_string(dense_cap));
  }
  require_hermitian(H);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(H.dense());
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  energies_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

Eigen::VectorXcd SpectralPropagator::project(const StateVector& psi) const {
  if (static_cast<std::size_t>(psi.size()) != dimension()) {
    throw std::invalid_argument("state dimension mismatch");
  }
  return vectors_.adjoint() * psi;
}

StateVector SpectralPropagator::at(const Eigen::VectorXcd& components, double t) const {
  Eigen::VectorXcd phased(components.size());
  for (Eigen::Index k = 0; k < components.size(); ++k) {
    phased[k] = std::polar(1.0, -energies_[k] * t) * components[k];
  }
  return vectors_ * phased;
}

StateVector evolve_dense(const OperatorMatrix& H, const StateVector& psi0, double t) {
  return SpectralPropagator(H).evolve(psi0, t);
}

namespace {

struct LanczosBasis {
  std::vector<StateVector> vectors;
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;     // off-diagonals, size k-1
  double residual = 0.0;    // beta_k, norm of the unused next Lanczos vector
};

LanczosBasis lanczos(const SparseMatrix& H, const StateVector& v0, int m, int& matvecs) {
  LanczosBasis basis;
  std::vector<double> alpha, beta;
  basis.vectors.push_back(v0);
  const double scale = std::max(1.0, v0.norm());
  for (int k = 0; k < m; ++k) {
    StateVector w = H * basis.vectors[static_cast<std::size_t>(k)];
    ++matvecs;
    alpha.push_back(basis.vectors[static_cast<std::size_t>(k)].dot(w).real());
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& v : basis.vectors) w -= v.dot(w) * v;
    }
    const double b = w.norm();
    if (k + 1 == m || b < 1e-14 * scale) {
      basis.residual = b < 1e-14 * scale ? 0.0 : b;
      break;
    }
    beta.push_back(b);
    basis.vectors.push_back(w / b);
  }
  basis.alpha = Eigen::Map<Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(alpha.size()));
  basis.beta = Eigen::Map<Eigen::VectorXd>(beta.data(), static_cast<Eigen::Index>(beta.size()));
  return basis;
}

}  // namespace

StateVector evolve_krylov(const OperatorMatrix& H, const StateVector& psi, double dt,
                          const KrylovOptions& options, KrylovStats* stats) {
  if (options.krylov_dim < 4) throw std::invalid_argument("krylov_dim must be at least 4");
  if (static_cast<std::size_t>(psi.size()) != H.dimension()) {
    throw std::invalid_argument("state dimension mismatch");
  }
  require_hermitian(H);
  KrylovStats local;
  StateVector current = psi;
  double remaining = dt;
  const double eps = 1e-15 * std::max(1.0, std::abs(dt));
  while (std::abs(remaining) > eps) {
    const double norm = current.norm();
    if (norm == 0.0) break;
    const int m = std::min<int>(options.krylov_dim, static_cast<int>(H.dimension()));
    LanczosBasis basis = lanczos(H.sparse(), current / norm, m, local.matvecs);
    const auto k = basis.alpha.size();
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
    T.diagonal() = basis.alpha;
    for (Eigen::Index i = 0; i + 1 < k; ++i) T(i, i + 1) = T(i + 1, i) = basis.beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(T);
    const Eigen::VectorXd& theta = small.eigenvalues();
    const Eigen::MatrixXd& Q = small.eigenvectors();

    const auto krylov_exp = [&](double tau) {
      Eigen::VectorXcd c(k);
      for (Eigen::Index j = 0; j < k; ++j) c[j] = std::polar(1.0, -theta[j] * tau) * Q(0, j);
      return Eigen::VectorXcd(Q.cast<Complex>() * c);
    };

    double tau = remaining;
    Eigen::VectorXcd y = krylov_exp(tau);
    int halvings = 0;
    while (basis.residual * std::abs(y[k - 1]) > options.tol) {
      if (++halvings > options.max_halvings) {
        throw ConvergenceError("Krylov step failed to converge after " +
                               std::to_string(options.max_halvings) + " halvings");
      }
      tau *= 0.5;
      y = krylov_exp(tau);
    }
    StateVector next = StateVector::Zero(current.size());
    for (Eigen::Index j = 0; j < k; ++j) next += (norm * y[j]) * basis.vectors[static_cast<std::size_t>(j)];
    current = std::move(next);
    remaining -= tau;
    ++local.substeps;
  }
  if (stats) *stats = local;
  return current;
}

}  // namespace z2lpg
