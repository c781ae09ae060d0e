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

#include "z2lpg/operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace z2lpg {

OperatorMatrix::OperatorMatrix(SparseMatrix m, bool hermitian)
    : m_(std::move(m)), hermitian_(hermitian) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("operator must be square");
  m_.makeCompressed();
}

DenseMatrix OperatorMatrix::dense() const { return DenseMatrix(m_); }

Complex OperatorMatrix::expectation(const StateVector& psi) const {
  return psi.dot(m_ * psi);
}

double OperatorMatrix::hermiticity_defect() const {
  SparseMatrix adj = m_.adjoint();
  return max_abs(SparseMatrix(m_ - adj));
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& other) const {
  if (other.dimension() != dimension()) throw std::invalid_argument("dimension mismatch");
  return OperatorMatrix(m_ + other.m_, hermitian_ && other.hermitian_);
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& other) const {
  if (other.dimension() != dimension()) throw std::invalid_argument("dimension mismatch");
  return OperatorMatrix(m_ - other.m_, hermitian_ && other.hermitian_);
}

OperatorMatrix OperatorMatrix::scaled(double s) const {
  return OperatorMatrix(SparseMatrix(m_ * Complex(s, 0.0)), hermitian_);
}

double DiagonalOperator::expectation(const StateVector& psi) const {
  if (static_cast<std::size_t>(psi.size()) != dimension()) {
    throw std::invalid_argument("state dimension mismatch");
  }
  double acc = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) acc += d_[i] * std::norm(psi[i]);
  return acc;
}

StateVector DiagonalOperator::apply(const StateVector& psi) const {
  return d_.cast<Complex>().cwiseProduct(psi);
}

OperatorMatrix DiagonalOperator::to_operator() const {
  const auto n = d_.size();
  SparseMatrix m(n, n);
  m.reserve(Eigen::VectorXi::Constant(n, 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d_[i] != 0.0) m.insert(i, i) = Complex(d_[i], 0.0);
  }
  return OperatorMatrix(std::move(m), true);
}

double max_abs(const SparseMatrix& m) {
  double best = 0.0;
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) best = std::max(best, std::abs(it.value()));
  }
  return best;
}

double max_abs(const OperatorMatrix& m) { return max_abs(m.sparse()); }

double commutator_max_norm(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("dimension mismatch");
  SparseMatrix c = a.sparse() * b.sparse() - b.sparse() * a.sparse();
  return max_abs(c);
}

double commutator_max_norm(const OperatorMatrix& a, const DiagonalOperator& d) {
  if (a.dimension() != d.dimension()) throw std::invalid_argument("dimension mismatch");
  // ([A, D])_ij = A_ij (d_j - d_i)
  double best = 0.0;
  const auto& m = a.sparse();
  for (Eigen::Index i = 0; i < m.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) {
      best = std::max(best, std::abs(it.value() * (d[it.col()] - d[it.row()])));
    }
  }
  return best;
}

}  // namespace z2lpg
