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


#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "z2lpg/errors.hpp"
#include "z2lpg/circuit.hpp"
#include "z2lpg/evolution.hpp"
#include "z2lpg/initial_state.hpp"
#include "z2lpg/model.hpp"

using namespace z2lpg;

namespace {

ModelParams circuit_params(double lambda, double V) {
  ModelParams p;
  p.lambda = lambda;
  p.V = V;
  p.error_model = ErrorModel::circuit;
  return p;
}

// Matrix of a gate list, built column by column.
DenseMatrix matrix_of(const HilbertSpace& space, std::span<const Gate> gates) {
  const auto D = static_cast<Eigen::Index>(space.dimension());
  DenseMatrix U(D, D);
  for (Eigen::Index c = 0; c < D; ++c) {
    StateVector v = StateVector::Zero(D);
    v[c] = 1.0;
    for (const auto& g : gates) apply_gate(space, v, g);
    U.col(c) = v;
  }
  return U;
}

// Distance between unitaries after removing the best global phase.
double phase_free_distance(const DenseMatrix& A, const DenseMatrix& B) {
  const Complex overlap = (A.adjoint() * B).trace();
  const Complex phase = overlap / std::abs(overlap);
  return oracle::max_abs(A * phase - B);
}

std::size_t count(const TrotterStep& step, GateKind kind) {
  return static_cast<std::size_t>(
      std::count_if(step.gates().begin(), step.gates().end(), [&](const Gate& g) { return g.kind() == kind; }));
}

const LatticeSpec kOpen4 = LatticeSpec::uniform(4, Boundary::open);
const LatticeSpec kOpen6 = LatticeSpec::uniform(6, Boundary::open);
const CoeffSequence kSeq = make_sequence(SequencePreset::elevenths);

}  // namespace

TEST(CompileStep, GateCountsForSixSites) {
  const auto step = compile_step(kOpen6, circuit_params(0.1, 4.0), kSeq, 0.2);
  EXPECT_EQ(step.gates().size(), 34u);
  EXPECT_EQ(count(step, GateKind::hopping_block), 5u);
  EXPECT_EQ(count(step, GateKind::gauge_phase_flip), 6u);
  EXPECT_EQ(count(step, GateKind::matter_hop), 5u);
  EXPECT_EQ(count(step, GateKind::rz), 6u);
  EXPECT_EQ(count(step, GateKind::xx), 5u);
  // Six field rotations plus the boundary protection rotation on link 0.
  EXPECT_EQ(count(step, GateKind::rx), 7u);
  EXPECT_EQ(step.layer(Layer::hopping).size(), 5u);
  EXPECT_EQ(step.layer(Layer::field).size(), 6u);
  EXPECT_EQ(step.layer(Layer::error).size(), 11u);
  EXPECT_EQ(step.layer(Layer::protection).size(), 12u);
  EXPECT_EQ(step.sublayer(Sublayer::hopping_even).size(), 3u);
  EXPECT_EQ(step.sublayer(Sublayer::hopping_odd).size(), 2u);
  EXPECT_EQ(step.sublayer(Sublayer::error_hop_even).size(), 3u);
  EXPECT_EQ(step.sublayer(Sublayer::error_hop_odd).size(), 2u);
}

TEST(CompileStep, PureHoppingStep) {
  ModelParams p = circuit_params(0.0, 0.0);
  p.h = 0.0;
  const auto step = compile_step(kOpen6, p, kSeq, 0.2);
  EXPECT_EQ(step.gates().size(), 5u);
  EXPECT_EQ(step.layer(Layer::hopping).size(), 5u);
}

TEST(CompileStep, Angles) {
  const auto step = compile_step(kOpen6, circuit_params(0.1, 4.0), kSeq, 0.2);
  for (const auto& g : step.layer(Layer::field)) EXPECT_DOUBLE_EQ(g.angle(), -2.0 * 0.3 * 0.2);
  for (const auto& g : step.sublayer(Sublayer::error_links)) EXPECT_DOUBLE_EQ(g.angle(), 2.0 * 0.1 * 0.2);
  for (const auto& g : step.layer(Layer::protection)) {
    if (g.kind() == GateKind::rz) {
      EXPECT_DOUBLE_EQ(g.angle(), 2.0 * kSeq.value(g.targets()[0].index) * 4.0 * 0.2);
    } else if (g.kind() == GateKind::xx) {
      EXPECT_DOUBLE_EQ(g.angle(), kSeq.value(g.targets()[1].index) * 4.0 * 0.2);
    }
  }
}

TEST(CompileStep, Errors) {
  EXPECT_THROW(compile_step(LatticeSpec::uniform(6, Boundary::periodic), circuit_params(0.1, 4.0), kSeq, 0.2),
               std::invalid_argument);
  EXPECT_THROW(compile_step(kOpen6, circuit_params(0.1, 4.0), kSeq, 0.0), std::invalid_argument);
  EXPECT_THROW(compile_step(kOpen6, circuit_params(0.1, 4.0), kSeq, -0.1), std::invalid_argument);
}

TEST(Gates, AreUnitary) {
  for (auto kind : {GateKind::rx, GateKind::rz, GateKind::gauge_phase_flip}) {
    const Gate g(kind, {Qubit::link(0)}, 0.731);
    EXPECT_LT(oracle::max_abs(g.unitary().adjoint() * g.unitary() - DenseMatrix::Identity(2, 2)), 1e-14);
  }
  const Gate xx(GateKind::xx, {Qubit::link(0), Qubit::link(1)}, 0.4);
  EXPECT_LT(oracle::max_abs(xx.unitary().adjoint() * xx.unitary() - DenseMatrix::Identity(4, 4)), 1e-14);
  const Gate hop(GateKind::hopping_block, {Qubit::matter(0), Qubit::link(0), Qubit::matter(1)}, 0.4);
  EXPECT_LT(oracle::max_abs(hop.unitary().adjoint() * hop.unitary() - DenseMatrix::Identity(8, 8)), 1e-14);
  EXPECT_THROW(Gate(GateKind::xx, {Qubit::link(0)}, 0.1), std::invalid_argument);
}

TEST(Gates, FullTurnIsMinusIdentity) {
  const Gate g(GateKind::rx, {Qubit::link(0)}, 2.0 * std::numbers::pi);
  EXPECT_LT(oracle::max_abs(g.unitary() + DenseMatrix::Identity(2, 2)), 1e-15);
}

TEST(Gates, XXIsAPhaseOnAlignedLinks) {
  const HilbertSpace space(kOpen4);
  const double theta = 0.37;
  const auto c = space.encode({1, 0, 1, 0}, {+1, +1, +1, +1});
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(space.dimension()));
  psi[static_cast<Eigen::Index>(space.index_of(c))] = 1.0;
  const StateVector before = psi;
  apply_gate(space, psi, Gate(GateKind::xx, {Qubit::link(1), Qubit::link(2)}, theta));
  EXPECT_LT((psi - std::polar(1.0, -theta) * before).norm(), 1e-15);
}

TEST(Gates, MatchLocalExponentialsOfTheOracle) {
  const oracle::Chain chain{2, false};
  const HilbertSpace space(LatticeSpec::uniform(2, Boundary::open));
  const double th = 0.29;
  const Complex mi(0, -1);
  struct Case {
    Gate gate;
    oracle::Dense expected;
  };
  const auto hop_term = [&] {
    oracle::Dense t = chain.op({{chain.matter(0), oracle::create()},
                                {chain.link(0), oracle::tau_z()},
                                {chain.matter(1), oracle::destroy()}});
    return oracle::Dense(t + t.adjoint());
  }();
  const auto matter_term = [&] {
    oracle::Dense t = chain.op({{chain.matter(0), oracle::create()}, {chain.matter(1), oracle::destroy()}});
    return oracle::Dense(t + t.adjoint());
  }();
  const std::vector<Case> cases{
      {Gate(GateKind::hopping_block, {Qubit::matter(0), Qubit::link(0), Qubit::matter(1)}, th),
       oracle::expm(Complex(0, th) * hop_term)},
      {Gate(GateKind::matter_hop, {Qubit::matter(0), Qubit::matter(1)}, th), oracle::expm(mi * th * matter_term)},
      {Gate(GateKind::rx, {Qubit::link(1)}, th), oracle::expm(mi * (th / 2) * chain.op({{chain.link(1), oracle::tau_x()}}))},
      {Gate(GateKind::gauge_phase_flip, {Qubit::link(0)}, th),
       oracle::expm(mi * (th / 2) * chain.op({{chain.link(0), oracle::tau_z()}}))},
      {Gate(GateKind::xx, {Qubit::link(0), Qubit::link(1)}, th),
       oracle::expm(mi * th * chain.op({{chain.link(0), oracle::tau_x()}, {chain.link(1), oracle::tau_x()}}))},
  };
  for (const auto& c : cases) {
    const std::vector<Gate> one{c.gate};
    EXPECT_LT(oracle::max_abs(matrix_of(space, one) - c.expected), 1e-12) << to_string(c.gate.kind());
  }
  // R_z(phi) = exp(-i sigma^z phi / 2) with sigma^z = 1 - 2n on the matter qubit; equal up to a phase.
  const std::vector<Gate> rz{Gate(GateKind::rz, {Qubit::matter(1)}, th)};
  EXPECT_LT(phase_free_distance(matrix_of(space, rz),
                                oracle::expm(mi * th * chain.op({{chain.matter(1), oracle::number()}}))),
            1e-12);
}

TEST(Sublayers, MatchExponentialsOfTheirHamiltonianPieces) {
  const HilbertSpace space(kOpen4);
  const auto params = circuit_params(0.13, 3.1);
  const double dt = 0.17;
  const auto step = compile_step(kOpen4, params, kSeq, dt);
  const Complex mi(0, -1);
  const auto U = [&](const OperatorMatrix& H) { return oracle::expm(mi * dt * H.dense()); };
  const auto sub = [&](Sublayer s) { return matrix_of(space, step.sublayer(s)); };
  EXPECT_LT(oracle::max_abs(sub(Sublayer::hopping_even) - U(build_gauge_hopping(space, 1.0, BondSet::even))), 1e-10);
  EXPECT_LT(oracle::max_abs(sub(Sublayer::hopping_odd) - U(build_gauge_hopping(space, 1.0, BondSet::odd))), 1e-10);
  EXPECT_LT(oracle::max_abs(sub(Sublayer::field) - U(build_field_term(space, 0.3).to_operator())), 1e-10);
  EXPECT_LT(oracle::max_abs(sub(Sublayer::error_links) - U(build_link_flips(space).scaled(0.13))), 1e-10);
  EXPECT_LT(oracle::max_abs(sub(Sublayer::error_hop_even) -
                            U(build_unassisted_hopping(space, BondSet::even).scaled(0.13))),
            1e-10);
  EXPECT_LT(oracle::max_abs(sub(Sublayer::error_hop_odd) -
                            U(build_unassisted_hopping(space, BondSet::odd).scaled(0.13))),
            1e-10);
  // Constant offsets of the protection term only contribute a global phase.
  EXPECT_LT(phase_free_distance(sub(Sublayer::protection), U(build_protection(space, kSeq, 3.1).to_operator())),
            1e-10);
}

TEST(Step, FirstOrderInTimeStep) {
  const HilbertSpace space(kOpen4);
  const auto params = circuit_params(0.3, 2.0);
  const auto H = build_hamiltonian(space, params, kSeq, HamiltonianVariant::faulty);
  double previous = 0.0;
  for (double dt : {0.02, 0.01, 0.005}) {
    const auto step = compile_step(kOpen4, params, kSeq, dt);
    const double d = phase_free_distance(matrix_of(space, step.gates()), oracle::expm(Complex(0, -dt) * H.dense()));
    if (previous > 0.0) EXPECT_NEAR(previous / d, 4.0, 0.3) << dt;
    previous = d;
  }
}

TEST(Step, AllLayersPreserveTheSectorWithoutErrors) {
  const HilbertSpace space(kOpen6, 3);
  CircuitConfig c;
  c.params = circuit_params(0.0, 4.0);
  c.dt = 0.2;
  c.n_steps = 100;
  const auto ts = run_circuit(space, c, build_initial_state(space, StatePattern::staggered));
  for (std::size_t k = 0; k < ts.size(); ++k) {
    EXPECT_LT(6.0 - ts.sum_g[k], 1e-6);
    EXPECT_LT(std::abs(ts.norm[k] - 1.0), 1e-9);
  }
}

TEST(Circuit, SeriesLayoutAndNorm) {
  const HilbertSpace space(kOpen6, 3);
  CircuitConfig c;
  c.params = circuit_params(0.1, 4.0);
  c.n_steps = 100;
  c.sample_every = 7;
  const auto ts = run_circuit(space, c, build_initial_state(space, StatePattern::staggered));
  ASSERT_EQ(ts.size(), 1u + 14u + 1u);
  EXPECT_DOUBLE_EQ(ts.times[1], 7 * 0.2);
  EXPECT_DOUBLE_EQ(ts.times.back(), 100 * 0.2);
  for (double n : ts.norm) EXPECT_LT(std::abs(n - 1.0), 1e-9);
  EXPECT_GT(ts.eps_raw.back(), 0.0);
}

TEST(Circuit, ConvergesToContinuousEvolutionAtFirstOrder) {
  const HilbertSpace space(kOpen4, 2);
  const auto params = circuit_params(0.5, 2.0);
  const auto psi = build_initial_state(space, StatePattern::staggered);
  const auto exact = evolve_dense(build_hamiltonian(space, params, kSeq, HamiltonianVariant::faulty), psi, 2.0);
  const ObservableEvaluator obs(space);
  const auto reference = obs.evaluate(exact);
  std::vector<double> dts, errs;
  for (double dt : {0.1, 0.05, 0.025, 0.0125}) {
    CircuitConfig c;
    c.params = params;
    c.sequence = kSeq;
    c.dt = dt;
    c.n_steps = static_cast<int>(std::lround(2.0 / dt));
    const auto ts = run_circuit(space, c, psi);
    const double err = std::max({std::abs(ts.eps_raw.back() - reference.violation_interior),
                                 std::abs(ts.n_stag.back() - reference.staggered_occupation),
                                 std::abs(ts.flux.back() - reference.electric_flux)});
    dts.push_back(dt);
    errs.push_back(err);
  }
  const double order = std::log(errs.front() / errs.back()) / std::log(dts.front() / dts.back());
  EXPECT_NEAR(order, 1.0, 0.2);
}

TEST(Circuit, EvenOddSplitMatchesSimultaneousErrorLayer) {
  // Replace the two matter-hop sublayers by the exact exponential of the
  // whole unassisted-hopping term and compare 100 steps.
  const HilbertSpace space(kOpen6, 3);
  const auto params = circuit_params(0.1, 4.0);
  const double dt = 0.2;
  const auto step = compile_step(kOpen6, params, kSeq, dt);
  const SpectralPropagator hop(build_unassisted_hopping(space).scaled(params.lambda));
  const auto psi0 = build_initial_state(space, StatePattern::staggered);
  StateVector a = psi0;
  StateVector b = psi0;
  const ObservableEvaluator obs(space);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    apply_step(space, a, step);
    for (auto s : {Sublayer::hopping_even, Sublayer::hopping_odd, Sublayer::field, Sublayer::error_links}) {
      for (const auto& g : step.sublayer(s)) apply_gate(space, b, g);
    }
    b = hop.evolve(b, dt);
    for (const auto& g : step.sublayer(Sublayer::protection)) apply_gate(space, b, g);
    const auto sa = obs.evaluate(a);
    const auto sb = obs.evaluate(b);
    worst = std::max({worst, std::abs(sa.violation_interior - sb.violation_interior),
                      std::abs(sa.staggered_occupation - sb.staggered_occupation),
                      std::abs(sa.electric_flux - sb.electric_flux)});
  }
  EXPECT_LT(worst, 1e-3);
}

TEST(Circuit, Errors) {
  const HilbertSpace space(kOpen6, 3);
  CircuitConfig c;
  c.n_steps = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = CircuitConfig{};
  c.sample_every = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = CircuitConfig{};
  c.dt = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  StateVector bad = StateVector::Zero(static_cast<Eigen::Index>(space.dimension()));
  bad[0] = 1.0;
  EXPECT_THROW(run_circuit(space, CircuitConfig{}, bad), SectorError);
  StateVector psi = build_initial_state(space, StatePattern::staggered);
  EXPECT_THROW(apply_gate(space, psi, Gate(GateKind::rx, {Qubit::link(6)}, 0.1)), std::out_of_range);
  EXPECT_THROW(apply_gate(space, psi, Gate(GateKind::rz, {Qubit::matter(-1)}, 0.1)), std::out_of_range);
  StateVector small = StateVector::Zero(3);
  EXPECT_THROW(apply_gate(space, small, Gate(GateKind::rx, {Qubit::link(0)}, 0.1)), std::invalid_argument);
}

TEST(Circuit, IdealProtectionStrength) {
  EXPECT_NEAR(ideal_protection_strength(0.2), 2.5 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(ideal_protection_strength(0.1), 15.708, 1e-3);
  EXPECT_NEAR(ideal_protection_strength(0.05), 31.416, 1e-3);
  EXPECT_THROW(ideal_protection_strength(0.0), std::invalid_argument);
}

TEST(Circuit, ScanIsSortedAndMatchesRuns) {
  const HilbertSpace space(kOpen4, 2);
  CircuitConfig c;
  c.params = circuit_params(0.1, 0.0);
  c.dt = 0.2;
  const auto psi = build_initial_state(space, StatePattern::staggered);
  const auto rows = scan_final_violation(space, c, {4.0, 1.0, 2.0}, psi, 4.0);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].V, 1.0);
  EXPECT_EQ(rows[2].V, 4.0);
  c.params.V = 2.0;
  c.n_steps = 20;
  EXPECT_DOUBLE_EQ(rows[1].eps_final, run_circuit(space, c, psi).eps_raw.back());
  EXPECT_THROW(scan_final_violation(space, c, {0.0}, psi), std::invalid_argument);
}

TEST(Netlist, OneGatePerLine) {
  const auto step = compile_step(kOpen6, circuit_params(0.1, 4.0), kSeq, 0.2);
  const auto text = to_netlist(step);
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 34u);
  EXPECT_EQ(lines.front(), "hopping_block m0 l0 m1 0.2");
  EXPECT_EQ(lines[5], "rx l0 -0.12");
  EXPECT_EQ(lines.back(), "xx l4 l5 0.8");
}
