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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "z2lpg/lattice.hpp"
#include "z2lpg/operator.hpp"
#include "z2lpg/quench.hpp"
#include "z2lpg/sequence.hpp"

namespace z2lpg {

/// A qubit of the alternating matter/gauge register.
struct Qubit {
  enum class Kind { matter, link };
  Kind kind = Kind::matter;
  int index = 0;

  static Qubit matter(int j) { return {Kind::matter, j}; }
  static Qubit link(int j) { return {Kind::link, j}; }
  bool operator==(const Qubit&) const = default;
};

enum class GateKind {
  rx,                // exp(-i tau^x phi/2) on a gauge qubit
  rz,                // exp(-i sigma^z phi/2) on a matter qubit
  xx,                // exp(-i theta tau^x tau^x) on two gauge qubits
  hopping_block,     // exp(+i theta (sigma^+_j tau^z_j sigma^-_{j+1} + h.c.)) on (m_j, l_j, m_{j+1})
  matter_hop,        // exp(-i theta (sigma^x sigma^x + sigma^y sigma^y)/2) on (m_j, m_{j+1})
  gauge_phase_flip,  // exp(-i tau^z phi/2) on a gauge qubit
};

std::string_view to_string(GateKind k);

/// Gate with its local unitary precomputed. Local basis index
/// sum_t bit(target t) << t, with matter bit = n and link bit 0 <-> tau^x = +1.
class Gate {
 public:
  Gate(GateKind kind, std::vector<Qubit> targets, double angle);

  GateKind kind() const noexcept { return kind_; }
  const std::vector<Qubit>& targets() const noexcept { return targets_; }
  double angle() const noexcept { return angle_; }
  const DenseMatrix& unitary() const noexcept { return unitary_; }
  bool diagonal() const noexcept { return diagonal_; }

 private:
  GateKind kind_;
  std::vector<Qubit> targets_;
  double angle_;
  DenseMatrix unitary_;
  bool diagonal_ = false;
};

/// Sub-layers in application order. Hopping and matter-hop layers are split
/// by 0-based bond parity because neighbouring bonds share qubits.
enum class Sublayer {
  hopping_even,
  hopping_odd,
  field,
  error_links,
  error_hop_even,
  error_hop_odd,
  protection,
};
inline constexpr std::size_t kSublayerCount = 7;

enum class Layer { hopping, field, error, protection };

/// One first-order Trotter step:
///   exp(-i H_J dt) exp(-i H_h dt) exp(-i lambda H_1 dt) exp(-i V H_W dt)
/// applied in that order (hopping first). Gates with a zero angle are left out.
///
/// The protection layer realizes V sum_j c_j (W_j - g_j) exactly:
///   W_j - g_j = tau^x_{j-1} tau^x_j + g_j sigma^z_j   (n = (sigma^z + 1)/2),
/// giving R_z(2 c_j V g_j dt) on every matter qubit, XX(c_j V dt) on links
/// (j-1, j) for j = 1..L-1, and R_x(2 c_0 V dt) on link 0 for the j = 0
/// constraint whose left link is the fictitious +1. For L = 6 a full step has
/// 5 + 6 + (6 + 5) + (6 + 5 + 1) = 34 gates.
class TrotterStep {
 public:
  TrotterStep() = default;

  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::span<const Gate> sublayer(Sublayer s) const;
  std::span<const Gate> layer(Layer l) const;

  void add(Sublayer s, Gate g);

 private:
  std::vector<Gate> gates_;
  std::array<std::size_t, kSublayerCount> end_{};  // one past the last gate of each sublayer
};

/// Throws std::invalid_argument for periodic lattices.
TrotterStep compile_step(const LatticeSpec& spec, const ModelParams& params,
                         const CoeffSequence& seq, double dt);

/// Applies a gate in place. Throws std::out_of_range for bad targets.
void apply_gate(const HilbertSpace& space, StateVector& psi, const Gate& gate);
void apply_step(const HilbertSpace& space, StateVector& psi, const TrotterStep& step);

struct CircuitConfig {
  double dt = 0.2;
  int n_steps = 100;
  ModelParams params;
  CoeffSequence sequence = make_sequence(SequencePreset::elevenths);
  int sample_every = 1;

  void validate() const;
};

/// Trotterized quench; observables sampled every `sample_every` steps at
/// t = k dt. `energy` is <H_0 + lambda H_1 + V H_W> with the circuit error.
TimeSeries run_circuit(const HilbertSpace& space, const CircuitConfig& config,
                       const StateVector& psi0);

/// V_ideal = pi / (2 dt), where protection angles start to alias.
double ideal_protection_strength(double dt);

struct ViolationScanRow {
  double V = 0.0;
  double eps_final = 0.0;
};

/// eps_raw after round(t_final/dt) steps for every V, sorted by V.
std::vector<ViolationScanRow> scan_final_violation(const HilbertSpace& space,
                                                   const CircuitConfig& config_template,
                                                   std::vector<double> V_values,
                                                   const StateVector& psi0, double t_final = 20.0);

/// One gate per line: "<kind> <targets> <angle>", angle to 12 significant
/// digits, targets as m<j>/l<j> (0-based).
std::string to_netlist(const TrotterStep& step);

}  // namespace z2lpg
