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

#include <complex>
#include <cstddef>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace z2lpg {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using DenseMatrix = Eigen::MatrixXcd;

/// Above this dimension operators are only ever handled in sparse form.
inline constexpr std::size_t kDenseDimensionCap = 4096;

/// Sparse complex operator on a HilbertSpace. Immutable after construction.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  OperatorMatrix(SparseMatrix m, bool hermitian);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const SparseMatrix& sparse() const noexcept { return m_; }
  DenseMatrix dense() const;
  bool hermitian() const noexcept { return hermitian_; }

  StateVector apply(const StateVector& psi) const { return m_ * psi; }
  /// <psi|M|psi>; real part only is meaningful for Hermitian M.
  Complex expectation(const StateVector& psi) const;

  /// max |M_ij - conj(M_ji)|.
  double hermiticity_defect() const;

  OperatorMatrix operator+(const OperatorMatrix& other) const;
  OperatorMatrix operator-(const OperatorMatrix& other) const;
  OperatorMatrix scaled(double s) const;

 private:
  SparseMatrix m_;
  bool hermitian_ = false;
};

/// Real diagonal operator: gauge generators, LPGs, projectors, protection.
class DiagonalOperator {
 public:
  DiagonalOperator() = default;
  explicit DiagonalOperator(Eigen::VectorXd diag) : d_(std::move(diag)) {}

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(d_.size()); }
  const Eigen::VectorXd& diagonal() const noexcept { return d_; }
  double operator[](std::size_t i) const { return d_[static_cast<Eigen::Index>(i)]; }

  double expectation(const StateVector& psi) const;
  StateVector apply(const StateVector& psi) const;
  double trace() const { return d_.sum(); }
  OperatorMatrix to_operator() const;

 private:
  Eigen::VectorXd d_;
};

/// max |(AB - BA)_ij|.
double commutator_max_norm(const OperatorMatrix& a, const OperatorMatrix& b);
double commutator_max_norm(const OperatorMatrix& a, const DiagonalOperator& d);
/// max |M_ij|.
double max_abs(const SparseMatrix& m);
double max_abs(const OperatorMatrix& m);

}  // namespace z2lpg
