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

#include "z2lpg/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "z2lpg/errors.hpp"
#include "z2lpg/model.hpp"
#include "z2lpg/observables.hpp"

namespace z2lpg {

std::string_view to_string(GateKind k) {
  switch (k) {
    case GateKind::rx: return "rx";
    case GateKind::rz: return "rz";
    case GateKind::xx: return "xx";
    case GateKind::hopping_block: return "hopping_block";
    case GateKind::matter_hop: return "matter_hop";
    case GateKind::gauge_phase_flip: return "gauge_phase_flip";
  }
  return "?";
}

namespace {

std::size_t arity(GateKind k) {
  switch (k) {
    case GateKind::rx:
    case GateKind::rz:
    case GateKind::gauge_phase_flip: return 1;
    case GateKind::xx:
    case GateKind::matter_hop: return 2;
    case GateKind::hopping_block: return 3;
  }
  return 0;
}

// exp(-i s K) for a small Hermitian K.
DenseMatrix exp_hermitian(const DenseMatrix& K, double s) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(K);
  const auto& w = solver.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) phases[i] = std::polar(1.0, -s * w[i]);
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

// Generator K and scale s with U = exp(-i s K).
std::pair<DenseMatrix, double> generator(GateKind kind, double angle) {
  switch (kind) {
    case GateKind::rx: {
      DenseMatrix K = DenseMatrix::Zero(2, 2);
      K(0, 0) = 1.0;  // tau^x = +1 on bit 0
      K(1, 1) = -1.0;
      return {K, angle / 2};
    }
    case GateKind::rz: {
      DenseMatrix K = DenseMatrix::Zero(2, 2);
      K(0, 0) = -1.0;  // sigma^z = 2n - 1
      K(1, 1) = 1.0;
      return {K, angle / 2};
    }
    case GateKind::gauge_phase_flip: {
      DenseMatrix K = DenseMatrix::Zero(2, 2);
      K(0, 1) = K(1, 0) = 1.0;  // tau^z flips the stored tau^x value
      return {K, angle / 2};
    }
    case GateKind::xx: {
      DenseMatrix K = DenseMatrix::Zero(4, 4);
      for (int b = 0; b < 4; ++b) K(b, b) = ((b & 1) ? -1.0 : 1.0) * ((b & 2) ? -1.0 : 1.0);
      return {K, angle};
    }
    case GateKind::matter_hop: {
      DenseMatrix K = DenseMatrix::Zero(4, 4);
      K(1, 2) = K(2, 1) = 1.0;  // sigma^+ sigma^- + h.c. swaps |10> and |01>
      return {K, angle};
    }
    case GateKind::hopping_block: {
      // bits: 0 = m_j, 1 = l_j, 2 = m_{j+1}
      DenseMatrix K = DenseMatrix::Zero(8, 8);
      for (int link = 0; link < 2; ++link) {
        const int from = 0b100 | (link << 1);          // n_j = 0, n_{j+1} = 1
        const int to = 0b001 | ((1 - link) << 1);      // n_j = 1, n_{j+1} = 0, link flipped
        K(to, from) = K(from, to) = 1.0;
      }
      return {K, -angle};
    }
  }
  throw std::logic_error("unknown gate kind");
}

}  // namespace

Gate::Gate(GateKind kind, std::vector<Qubit> targets, double angle)
    : kind_(kind), targets_(std::move(targets)), angle_(angle) {
  if (targets_.size() != arity(kind_)) throw std::invalid_argument("wrong number of gate targets");
  const auto [K, s] = generator(kind_, angle_);
  unitary_ = exp_hermitian(K, s);
  diagonal_ = kind_ == GateKind::rx || kind_ == GateKind::rz || kind_ == GateKind::xx;
}

std::span<const Gate> TrotterStep::sublayer(Sublayer s) const {
  const auto i = static_cast<std::size_t>(s);
  const std::size_t begin = i == 0 ? 0 : end_[i - 1];
  return std::span<const Gate>(gates_).subspan(begin, end_[i] - begin);
}

std::span<const Gate> TrotterStep::layer(Layer l) const {
  std::size_t first = 0, last = 0;
  switch (l) {
    case Layer::hopping: first = 0; last = 1; break;
    case Layer::field: first = 2; last = 2; break;
    case Layer::error: first = 3; last = 5; break;
    case Layer::protection: first = 6; last = 6; break;
  }
  const std::size_t begin = first == 0 ? 0 : end_[first - 1];
  return std::span<const Gate>(gates_).subspan(begin, end_[last] - begin);
}

void TrotterStep::add(Sublayer s, Gate g) {
  const auto i = static_cast<std::size_t>(s);
  for (std::size_t k = i + 1; k < kSublayerCount; ++k) {
    if (end_[k] != end_[i]) throw std::logic_error("sublayers must be filled in order");
  }
  gates_.push_back(std::move(g));
  for (std::size_t k = i; k < kSublayerCount; ++k) end_[k] = gates_.size();
}

TrotterStep compile_step(const LatticeSpec& spec, const ModelParams& params,
                         const CoeffSequence& seq, double dt) {
  spec.validate();
  if (spec.boundary != Boundary::open) {
    throw std::invalid_argument("circuit mode supports open boundaries only");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("Trotter step must be positive");
  const int L = spec.n_matter;
  TrotterStep step;
  const auto add = [&](Sublayer s, GateKind k, std::vector<Qubit> t, double angle) {
    if (angle != 0.0) step.add(s, Gate(k, std::move(t), angle));
  };
  const auto bond_qubits = [](int b) {
    return std::vector<Qubit>{Qubit::matter(b), Qubit::link(b), Qubit::matter(b + 1)};
  };

  for (int parity = 0; parity < 2; ++parity) {
    const auto sub = parity == 0 ? Sublayer::hopping_even : Sublayer::hopping_odd;
    for (int b = parity; b < L - 1; b += 2) {
      add(sub, GateKind::hopping_block, bond_qubits(b), params.J * dt);
    }
  }
  for (int l = 0; l < L; ++l) add(Sublayer::field, GateKind::rx, {Qubit::link(l)}, -2.0 * params.h * dt);

  for (int l = 0; l < L; ++l) {
    add(Sublayer::error_links, GateKind::gauge_phase_flip, {Qubit::link(l)}, 2.0 * params.lambda * dt);
  }
  for (int parity = 0; parity < 2; ++parity) {
    const auto sub = parity == 0 ? Sublayer::error_hop_even : Sublayer::error_hop_odd;
    for (int b = parity; b < L - 1; b += 2) {
      add(sub, GateKind::matter_hop, {Qubit::matter(b), Qubit::matter(b + 1)}, params.lambda * dt);
    }
  }

  const auto& g = spec.target_sector;
  for (int j = 0; j < L; ++j) {
    add(Sublayer::protection, GateKind::rz, {Qubit::matter(j)},
        2.0 * seq.value(j) * params.V * g[static_cast<std::size_t>(j)] * dt);
  }
  add(Sublayer::protection, GateKind::rx, {Qubit::link(0)}, 2.0 * seq.value(0) * params.V * dt);
  for (int j = 1; j < L; ++j) {
    add(Sublayer::protection, GateKind::xx, {Qubit::link(j - 1), Qubit::link(j)},
        seq.value(j) * params.V * dt);
  }
  return step;
}

void apply_gate(const HilbertSpace& space, StateVector& psi, const Gate& gate) {
  if (static_cast<std::size_t>(psi.size()) != space.dimension()) {
    throw std::invalid_argument("state dimension mismatch");
  }
  const int L = space.n_matter();
  const auto& targets = gate.targets();
  std::vector<HilbertSpace::Config> bits;
  HilbertSpace::Config mask = 0;
  for (const auto& q : targets) {
    if (q.index < 0 || q.index >= L) {
      throw std::out_of_range("gate target " + std::to_string(q.index) + " outside [0, " +
                              std::to_string(L) + ")");
    }
    const auto b = q.kind == Qubit::Kind::matter ? space.matter_bit(q.index) : space.link_bit(q.index);
    if (mask & b) throw std::invalid_argument("gate targets repeat a qubit");
    mask |= b;
    bits.push_back(b);
  }
  const auto local_index = [&](HilbertSpace::Config c) {
    std::size_t idx = 0;
    for (std::size_t t = 0; t < bits.size(); ++t) idx |= ((c & bits[t]) ? 1u : 0u) << t;
    return idx;
  };
  const DenseMatrix& U = gate.unitary();
  const auto D = static_cast<std::size_t>(psi.size());

  if (gate.diagonal()) {
    for (std::size_t i = 0; i < D; ++i) {
      const auto li = local_index(space.config(i));
      psi[static_cast<Eigen::Index>(i)] *= U(static_cast<Eigen::Index>(li), static_cast<Eigen::Index>(li));
    }
    return;
  }

  const std::size_t group = std::size_t{1} << bits.size();
  std::vector<char> visited(D, 0);
  std::vector<std::size_t> members(group);
  Eigen::VectorXcd local(static_cast<Eigen::Index>(group));
  for (std::size_t i = 0; i < D; ++i) {
    if (visited[i]) continue;
    const auto base = space.config(i) & ~mask;
    for (std::size_t li = 0; li < group; ++li) {
      HilbertSpace::Config c = base;
      for (std::size_t t = 0; t < bits.size(); ++t) {
        if (li & (std::size_t{1} << t)) c |= bits[t];
      }
      const auto idx = space.index_of(c);
      members[li] = idx;
      local[static_cast<Eigen::Index>(li)] =
          idx == HilbertSpace::npos ? Complex(0.0, 0.0) : psi[static_cast<Eigen::Index>(idx)];
      if (idx != HilbertSpace::npos) visited[idx] = 1;
    }
    const Eigen::VectorXcd out = U * local;
    for (std::size_t li = 0; li < group; ++li) {
      if (members[li] != HilbertSpace::npos) psi[static_cast<Eigen::Index>(members[li])] = out[static_cast<Eigen::Index>(li)];
    }
  }
}

void apply_step(const HilbertSpace& space, StateVector& psi, const TrotterStep& step) {
  for (const auto& g : step.gates()) apply_gate(space, psi, g);
}

void CircuitConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("circuit dt must be positive");
  if (n_steps < 1) throw std::invalid_argument("circuit needs at least one step");
  if (sample_every < 1) throw std::invalid_argument("sample_every must be at least 1");
}

TimeSeries run_circuit(const HilbertSpace& space, const CircuitConfig& config,
                       const StateVector& psi0) {
  config.validate();
  ModelParams params = config.params;
  params.error_model = ErrorModel::circuit;
  const TrotterStep step = compile_step(space.spec(), params, config.sequence, config.dt);
  const double in_sector = build_target_projector(space).expectation(psi0);
  if (std::abs(in_sector - 1.0) > 1e-10) {
    throw SectorError("circuit initial state is not in the target sector", {});
  }
  const OperatorMatrix H = build_hamiltonian(space, params, config.sequence, HamiltonianVariant::faulty);
  const ObservableEvaluator observables(space);

  TimeSeries ts;
  StateVector psi = psi0;
  ts.append(0.0, observables.evaluate(psi), H.expectation(psi).real());
  for (int k = 1; k <= config.n_steps; ++k) {
    apply_step(space, psi, step);
    if (k % config.sample_every == 0 || k == config.n_steps) {
      ts.append(static_cast<double>(k) * config.dt, observables.evaluate(psi), H.expectation(psi).real());
    }
  }
  ts.finalize();
  return ts;
}

double ideal_protection_strength(double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("Trotter step must be positive");
  return std::numbers::pi / (2.0 * dt);
}

std::vector<ViolationScanRow> scan_final_violation(const HilbertSpace& space,
                                                   const CircuitConfig& config_template,
                                                   std::vector<double> V_values,
                                                   const StateVector& psi0, double t_final) {
  std::sort(V_values.begin(), V_values.end());
  const int n_steps = static_cast<int>(std::llround(t_final / config_template.dt));
  if (n_steps < 1) throw std::invalid_argument("t_final shorter than one Trotter step");
  const ObservableEvaluator observables(space);
  std::vector<ViolationScanRow> rows;
  for (double V : V_values) {
    if (!(V > 0.0)) throw std::invalid_argument("scan values of V must be positive");
    ModelParams params = config_template.params;
    params.V = V;
    params.error_model = ErrorModel::circuit;
    const TrotterStep step = compile_step(space.spec(), params, config_template.sequence,
                                          config_template.dt);
    StateVector psi = psi0;
    for (int k = 0; k < n_steps; ++k) apply_step(space, psi, step);
    rows.push_back({V, observables.violation(psi, ViolationMode::interior)});
  }
  return rows;
}

std::string to_netlist(const TrotterStep& step) {
  std::string out;
  char buf[64];
  for (const auto& g : step.gates()) {
    out += to_string(g.kind());
    for (const auto& q : g.targets()) {
      out += q.kind == Qubit::Kind::matter ? " m" : " l";
      out += std::to_string(q.index);
    }
    std::snprintf(buf, sizeof buf, " %.12g\n", g.angle());
    out += buf;
  }
  return out;
}

}  // namespace z2lpg
