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

#include <array>
#include <vector>

#include "z2lpg/lattice.hpp"
#include "z2lpg/operator.hpp"
#include "z2lpg/sequence.hpp"

namespace z2lpg {

/// Which hopping bonds a builder includes. Bond j couples matter sites j and
/// j+1 through link j; "even"/"odd" refer to the 0-based bond index.
enum class BondSet { all, even, odd };

bool bond_in_set(int bond, BondSet set) noexcept;

// ---------------------------------------------------------------------------
// Ideal theory
//
//   H_0 = -J sum_bonds (a_j^dag tau^z_j a_{j+1} + h.c.) - h sum_links tau^x_j
//
// tau^z flips the stored link value; tau^x is diagonal. Matter is hard-core
// bosons, equivalently spin-1/2 with n = (sigma^z + 1)/2.
// ---------------------------------------------------------------------------

/// Gauge-assisted hopping -J sum (a_j^dag tau^z_j a_{j+1} + h.c.).
OperatorMatrix build_gauge_hopping(const HilbertSpace& space, double J, BondSet bonds = BondSet::all);
/// Electric-field term -h sum_j tau^x_j over all L links.
DiagonalOperator build_field_term(const HilbertSpace& space, double h);
OperatorMatrix build_ideal_hamiltonian(const HilbertSpace& space, double J, double h);

/// G_j = (-1)^{n_j} tau^x_{j-1} tau^x_j. Diagonal with entries +-1.
DiagonalOperator build_gauge_generator(const HilbertSpace& space, int site);

/// W_j = tau^x_{j-1} tau^x_j + 2 g_j^tar n_j.
DiagonalOperator build_lpg(const HilbertSpace& space, int site, int g_target);

/// V H_W = V sum_j c_j (W_j - g_j^tar), sum over all L constraints (the
/// fictitious left link enters at j = 0 on open chains).
DiagonalOperator build_protection(const HilbertSpace& space, const CoeffSequence& seq, double V);

// ---------------------------------------------------------------------------
// Error models
// ---------------------------------------------------------------------------

/// Floquet-derived analog error, summed over the hopping bonds:
///   sum_j [ (a1 a_j^dag tau^+_j a_{j+1} + a2 a_j^dag tau^-_j a_{j+1} + h.c.)
///           + (a3 n_j - a4 n_{j+1}) tau^z_j ]
/// with tau^+- = (tau^x +- i tau^y)/2 the raising/lowering operators of tau^z.
OperatorMatrix build_analog_error(const HilbertSpace& space, const std::array<double, 4>& alphas);

/// Circuit error: sum_links tau^z_j + sum_bonds (sigma^+_j sigma^-_{j+1} + h.c.).
OperatorMatrix build_circuit_error(const HilbertSpace& space);
/// Link part of the circuit error, sum_links tau^z_j.
OperatorMatrix build_link_flips(const HilbertSpace& space);
/// Unassisted matter tunnelling sum_bonds (sigma^+_j sigma^-_{j+1} + h.c.).
OperatorMatrix build_unassisted_hopping(const HilbertSpace& space, BondSet bonds = BondSet::all);

OperatorMatrix build_error(const HilbertSpace& space, const ModelParams& params);

// ---------------------------------------------------------------------------
// Sector structure and composite Hamiltonians
// ---------------------------------------------------------------------------

/// P_0: 1 on basis states with G_j = g_j^tar for every j, else 0.
DiagonalOperator build_target_projector(const HilbertSpace& space);

/// H_adj = H_0 + lambda P_0 H_1 P_0.
OperatorMatrix build_adjusted_hamiltonian(const OperatorMatrix& H0, const OperatorMatrix& H1,
                                          const DiagonalOperator& P0, double lambda);

enum class HamiltonianVariant { faulty, adjusted, ideal };

std::string_view to_string(HamiltonianVariant v);
HamiltonianVariant parse_variant(std::string_view s);

/// faulty:   H_0 + lambda H_1 + V H_W
/// adjusted: H_0 + lambda P_0 H_1 P_0
/// ideal:    H_0
OperatorMatrix build_hamiltonian(const HilbertSpace& space, const ModelParams& params,
                                 const CoeffSequence& seq, HamiltonianVariant variant);

}  // namespace z2lpg
