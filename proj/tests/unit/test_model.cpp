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


#include <set>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "z2lpg/errors.hpp"
#include "z2lpg/initial_state.hpp"
#include "z2lpg/model.hpp"

using namespace z2lpg;

namespace {

HilbertSpace pbc(int L, std::optional<int> N = std::nullopt) {
  return HilbertSpace(LatticeSpec::uniform(L, Boundary::periodic), N);
}
HilbertSpace obc(int L, std::optional<int> N = std::nullopt) {
  return HilbertSpace(LatticeSpec::uniform(L, Boundary::open), N);
}

DiagonalOperator number_operator(const HilbertSpace& space) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(space.dimension()));
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    d[static_cast<Eigen::Index>(i)] = space.particle_count(space.config(i));
  }
  return DiagonalOperator(d);
}

StateVector basis_state(const HilbertSpace& space, HilbertSpace::Config c) {
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(space.dimension()));
  v[static_cast<Eigen::Index>(space.index_of(c))] = 1.0;
  return v;
}

}  // namespace

class BothBoundaries : public ::testing::TestWithParam<std::tuple<int, Boundary>> {};

TEST_P(BothBoundaries, IdealHamiltonianIsGaugeInvariant) {
  const auto [L, b] = GetParam();
  const HilbertSpace space(LatticeSpec::uniform(L, b), L <= 6 ? std::nullopt : std::optional<int>(L / 2));
  const auto H0 = build_ideal_hamiltonian(space, 1.0, 0.3);
  EXPECT_LT(H0.hermiticity_defect(), 1e-12);
  for (int j = 0; j < L; ++j) EXPECT_LT(commutator_max_norm(H0, build_gauge_generator(space, j)), 1e-12);
  const auto HW = build_protection(space, make_sequence(SequencePreset::seventeenths), 7.0);
  for (int j = 0; j < L; ++j) {
    EXPECT_LT(commutator_max_norm(HW.to_operator(), build_gauge_generator(space, j)), 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, BothBoundaries,
                         ::testing::Combine(::testing::Values(2, 4, 6, 8),
                                            ::testing::Values(Boundary::open, Boundary::periodic)));

TEST(IdealHamiltonian, MatchesKroneckerConstruction) {
  for (bool periodic : {false, true}) {
    const oracle::Chain chain{3, periodic};
    const HilbertSpace space(LatticeSpec::uniform(3, periodic ? Boundary::periodic : Boundary::open));
    const auto H0 = build_ideal_hamiltonian(space, 1.3, 0.3);
    EXPECT_LT(oracle::max_abs(H0.dense() - chain.H0(1.3, 0.3)), 1e-14) << "periodic=" << periodic;
    const HilbertSpace sector(space.spec(), 1);
    EXPECT_LT(oracle::max_abs(build_ideal_hamiltonian(sector, 1.3, 0.3).dense() -
                              oracle::restrict(chain.H0(1.3, 0.3), sector)),
              1e-14);
  }
}

TEST(IdealHamiltonian, HoppingIsOffDiagonal) {
  const auto space = pbc(4);
  const auto H0 = build_ideal_hamiltonian(space, 1.0, 0.0);
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    EXPECT_EQ(H0.expectation(basis_state(space, space.config(i))), Complex(0.0, 0.0));
  }
}

TEST(IdealHamiltonian, TwoSiteOpenChainByHand) {
  const auto space = obc(2);
  const auto H0 = build_ideal_hamiltonian(space, 1.0, 0.0);
  // A hop moves the single particle across the bond and flips the link.
  int connected_pairs = 0;
  for (HilbertSpace::Config a = 0; a < 16; ++a) {
    for (HilbertSpace::Config b = a + 1; b < 16; ++b) {
      const bool one_particle = space.particle_count(a) == 1 && space.particle_count(b) == 1;
      const bool moved = space.occupation(a, 0) != space.occupation(b, 0);
      const bool flipped = space.link_value(a, 0) != space.link_value(b, 0);
      const bool other_link_same = space.link_value(a, 1) == space.link_value(b, 1);
      if (one_particle && moved && flipped && other_link_same) ++connected_pairs;
    }
  }
  EXPECT_EQ(connected_pairs, 4);
  const auto D = H0.dense();
  int nonzero = 0;
  for (Eigen::Index i = 0; i < D.rows(); ++i)
    for (Eigen::Index k = 0; k < D.cols(); ++k)
      if (std::abs(D(i, k)) > 0) {
        ++nonzero;
        EXPECT_EQ(D(i, k), Complex(-1.0, 0.0));
      }
  EXPECT_EQ(nonzero, 2 * connected_pairs);
}

TEST(IdealHamiltonian, ConservesParticleNumber) {
  const auto space = pbc(4);
  const auto N = number_operator(space);
  ModelParams p;
  EXPECT_LT(commutator_max_norm(build_ideal_hamiltonian(space, 1.0, 0.3), N), 1e-14);
  EXPECT_LT(commutator_max_norm(build_analog_error(space, p.alphas), N), 1e-14);
  EXPECT_LT(commutator_max_norm(build_circuit_error(obc(4)), number_operator(obc(4))), 1e-14);
}

TEST(GaugeGenerator, StaggeredStateIsInTargetSector) {
  const auto space = pbc(4);
  const auto c = space.encode({1, 0, 1, 0}, {+1, +1, -1, -1});
  const auto i = space.index_of(c);
  for (int j = 0; j < 4; ++j) EXPECT_EQ(build_gauge_generator(space, j)[i], 1.0);
}

TEST(GaugeGenerator, OneFlippedLinkFlipsTwoAdjacentGenerators) {
  const auto space = pbc(4);
  for (int l = 0; l < 4; ++l) {
    std::vector<int> links{+1, +1, -1, -1};
    links[static_cast<std::size_t>(l)] *= -1;
    const auto i = space.index_of(space.encode({1, 0, 1, 0}, links));
    std::vector<int> flipped;
    for (int j = 0; j < 4; ++j)
      if (build_gauge_generator(space, j)[i] < 0) flipped.push_back(j);
    EXPECT_EQ(flipped, (std::vector<int>{std::min(l, (l + 1) % 4), std::max(l, (l + 1) % 4)}));
  }
}

TEST(GaugeGenerator, SquaresToIdentityAndMatchesOracle) {
  for (bool periodic : {false, true}) {
    const oracle::Chain chain{3, periodic};
    const HilbertSpace space(LatticeSpec::uniform(3, periodic ? Boundary::periodic : Boundary::open));
    for (int j = 0; j < 3; ++j) {
      const auto G = build_gauge_generator(space, j);
      EXPECT_TRUE((G.diagonal().array().square() == 1.0).all());
      EXPECT_LT(oracle::max_abs(G.to_operator().dense() - chain.G(j)), 1e-15);
    }
  }
  EXPECT_THROW(build_gauge_generator(pbc(4), 4), std::out_of_range);
  EXPECT_THROW(build_gauge_generator(pbc(4), -1), std::out_of_range);
}

TEST(Lpg, LocalConfigurationTable) {
  // Enumerate (n, pair product) at an interior site of an open chain.
  const auto space = obc(3);
  for (int g : {+1, -1}) {
    std::set<double> values;
    for (HilbertSpace::Config c = 0; c < space.dimension(); ++c) {
      const auto i = space.index_of(c);
      const double w = build_lpg(space, 1, g)[i];
      const double G = build_gauge_generator(space, 1)[i];
      const int n = space.occupation(c, 1);
      const int pair = space.link_value(c, 0) * space.link_value(c, 1);
      EXPECT_EQ(w, pair + 2 * g * n);
      EXPECT_EQ(G, (n ? -1 : 1) * pair);
      EXPECT_TRUE(w - g == -2 || w - g == 0 || w - g == 2);
      values.insert(w);
    }
    EXPECT_EQ(values, (std::set<double>{g - 2.0, double(g), g + 2.0}));
  }
  // The two worked cases for g = +1.
  const auto c1 = space.encode({0, 1, 0}, {+1, -1, +1});
  EXPECT_EQ(build_lpg(space, 1, +1)[space.index_of(c1)], 1.0);
  EXPECT_EQ(build_gauge_generator(space, 1)[space.index_of(c1)], 1.0);
  const auto c2 = space.encode({0, 0, 0}, {+1, -1, +1});
  EXPECT_EQ(build_lpg(space, 1, +1)[space.index_of(c2)], -1.0);
  EXPECT_EQ(build_gauge_generator(space, 1)[space.index_of(c2)], -1.0);
}

TEST(Lpg, DefiningRelationByFullEnumeration) {
  for (auto b : {Boundary::open, Boundary::periodic}) {
    const HilbertSpace space(LatticeSpec::uniform(4, b));
    for (int j = 0; j < 4; ++j) {
      const auto G = build_gauge_generator(space, j);
      for (int g : {+1, -1}) {
        const auto W = build_lpg(space, j, g);
        for (std::size_t i = 0; i < space.dimension(); ++i) EXPECT_EQ(W[i] == g, G[i] == g);
      }
    }
  }
}

TEST(Lpg, MatchesOracle) {
  const oracle::Chain chain{3, true};
  const auto space = pbc(3);
  for (int j = 0; j < 3; ++j) {
    EXPECT_LT(oracle::max_abs(build_lpg(space, j, -1).to_operator().dense() - chain.W(j, -1)), 1e-15);
  }
}

TEST(Protection, AnnihilatesTargetSector) {
  for (auto b : {Boundary::open, Boundary::periodic}) {
    LatticeSpec spec = LatticeSpec::uniform(4, b);
    spec.target_sector = {+1, -1, -1, +1};
    const HilbertSpace space(spec);
    const auto HW = build_protection(space, make_sequence(SequencePreset::seventeenths), 3.0);
    const auto P0 = build_target_projector(space);
    for (std::size_t i = 0; i < space.dimension(); ++i) {
      if (P0[i] == 1.0) EXPECT_EQ(HW[i], 0.0);
      else EXPECT_NE(HW[i], 0.0);  // the sequence is compliant at L=4
    }
  }
}

TEST(Protection, SingleDeviationCostsTwoCV) {
  const auto space = pbc(4);
  const auto seq = make_sequence(SequencePreset::seventeenths);
  const double V = 5.0;
  const auto HW = build_protection(space, seq, V);
  // Occupying empty site k without touching links deviates only site k by +2.
  for (int k : {1, 3}) {
    std::vector<int> occ{1, 0, 1, 0};
    occ[static_cast<std::size_t>(k)] = 1;
    const auto i = space.index_of(space.encode(occ, {+1, +1, -1, -1}));
    EXPECT_NEAR(HW[i], 2.0 * seq.value(k) * V, 1e-14);
  }
}

TEST(Protection, MatchesOracle) {
  const oracle::Chain chain{3, false};
  const auto space = obc(3);
  const auto seq = make_sequence(SequencePreset::elevenths);
  oracle::Dense expected = chain.zero();
  for (int j = 0; j < 3; ++j) expected += 2.5 * seq.value(j) * (chain.W(j, 1) - chain.identity());
  EXPECT_LT(oracle::max_abs(build_protection(space, seq, 2.5).to_operator().dense() - expected), 1e-14);
}

TEST(AnalogError, MatchesOracleAndBreaksGaugeSymmetry) {
  const ModelParams p;
  for (bool periodic : {false, true}) {
    const oracle::Chain chain{3, periodic};
    const HilbertSpace space(LatticeSpec::uniform(3, periodic ? Boundary::periodic : Boundary::open));
    const auto H1 = build_analog_error(space, p.alphas);
    EXPECT_LT(H1.hermiticity_defect(), 1e-15);
    EXPECT_LT(oracle::max_abs(H1.dense() - chain.analog_error(p.alphas)), 1e-14);
  }
  const auto space = pbc(4);
  const auto H1 = build_analog_error(space, p.alphas);
  for (int j = 0; j < 4; ++j) EXPECT_GT(commutator_max_norm(H1, build_gauge_generator(space, j)), 0.1);
}

TEST(AnalogError, LinkFlipTermFlipsTwoGenerators) {
  // Only the occupation-weighted tau^z terms connect states with equal
  // matter configuration.
  const auto space = pbc(4);
  const ModelParams p;
  const auto H1 = build_analog_error(space, p.alphas);
  const auto src = space.encode({1, 0, 1, 0}, {+1, +1, -1, -1});
  const auto psi = basis_state(space, src);
  const StateVector out = H1.apply(psi);
  int hits = 0;
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const auto c = space.config(i);
    if (std::abs(out[static_cast<Eigen::Index>(i)]) == 0.0) continue;
    if ((c & 0xFu) != (src & 0xFu)) continue;
    ++hits;
    int flipped = 0;
    for (int j = 0; j < 4; ++j) flipped += build_gauge_generator(space, j)[i] < 0;
    EXPECT_EQ(flipped, 2);
  }
  EXPECT_EQ(hits, 4);  // every bond touches an occupied site
}

TEST(CircuitError, ConnectsOnlyDistinctSectors) {
  for (int L : {4, 6}) {
    const auto space = obc(L);
    const auto H1 = build_circuit_error(space);
    EXPECT_LT(H1.hermiticity_defect(), 1e-15);
    const auto P0 = build_target_projector(space).to_operator();
    const SparseMatrix sandwich = P0.sparse() * H1.sparse() * P0.sparse();
    EXPECT_EQ(max_abs(sandwich), 0.0);
    // Every nonzero element changes at least one generator eigenvalue.
    std::vector<DiagonalOperator> G;
    for (int j = 0; j < L; ++j) G.push_back(build_gauge_generator(space, j));
    for (Eigen::Index r = 0; r < H1.sparse().outerSize(); ++r) {
      for (SparseMatrix::InnerIterator it(H1.sparse(), r); it; ++it) {
        bool differs = false;
        for (const auto& g : G) differs |= g[static_cast<std::size_t>(it.row())] != g[static_cast<std::size_t>(it.col())];
        EXPECT_TRUE(differs);
      }
    }
  }
  const oracle::Chain chain{3, false};
  EXPECT_LT(oracle::max_abs(build_circuit_error(obc(3)).dense() - chain.circuit_error()), 1e-15);
}

TEST(CircuitError, ElementaryProcessesFlipAdjacentPairs) {
  const auto space = obc(6);
  const auto src = space.encode({1, 0, 1, 0, 1, 0}, {-1, -1, +1, +1, -1, -1});
  const auto count_flipped = [&](HilbertSpace::Config c) {
    const auto i = space.index_of(c);
    std::vector<int> out;
    for (int j = 0; j < 6; ++j)
      if (build_gauge_generator(space, j)[i] < 0) out.push_back(j);
    return out;
  };
  EXPECT_TRUE(count_flipped(src).empty());
  // Unassisted hop 2 -> 3: parity changes on both sites, links untouched.
  EXPECT_EQ(count_flipped(src ^ space.matter_bit(2) ^ space.matter_bit(3)), (std::vector<int>{2, 3}));
  // tau^z on link 2.
  EXPECT_EQ(count_flipped(src ^ space.link_bit(2)), (std::vector<int>{2, 3}));
}

TEST(TargetProjector, TraceIdempotenceAndAbsorption) {
  const auto space = pbc(4);
  const auto P0 = build_target_projector(space);
  int count = 0;
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    bool all = true;
    for (int j = 0; j < 4; ++j) all &= build_gauge_generator(space, j)[i] == 1.0;
    count += all;
  }
  EXPECT_EQ(P0.trace(), count);
  EXPECT_EQ(count, 16);  // 2^(2L) / 2^L sectors for periodic chains with even parity
  EXPECT_TRUE((P0.diagonal().array() * P0.diagonal().array() == P0.diagonal().array()).all());
  for (int j = 0; j < 4; ++j) {
    const auto G = build_gauge_generator(space, j);
    EXPECT_TRUE((P0.diagonal().array() * G.diagonal().array() == P0.diagonal().array()).all());
  }
  const oracle::Chain chain{3, true};
  EXPECT_LT(oracle::max_abs(build_target_projector(pbc(3)).to_operator().dense() - chain.P0({1, 1, 1})), 1e-15);
}

TEST(AdjustedHamiltonian, CircuitErrorGivesIdealTheory) {
  const auto space = obc(6, 3);
  const auto H0 = build_ideal_hamiltonian(space, 1.0, 0.3);
  const auto H1 = build_circuit_error(space);
  const auto Hadj = build_adjusted_hamiltonian(H0, H1, build_target_projector(space), 0.7);
  EXPECT_EQ(max_abs(Hadj - H0), 0.0);
}

TEST(AdjustedHamiltonian, AnalogErrorSurvivesProjection) {
  const auto space = pbc(4);
  const ModelParams p;
  const auto H0 = build_ideal_hamiltonian(space, 1.0, 0.3);
  const auto H1 = build_analog_error(space, p.alphas);
  const auto P0 = build_target_projector(space);
  const auto Hadj = build_adjusted_hamiltonian(H0, H1, P0, 1.0);
  EXPECT_GT(max_abs(Hadj - H0), 0.1);
  EXPECT_LT(Hadj.hermiticity_defect(), 1e-15);
  for (int j = 0; j < 4; ++j) EXPECT_LT(commutator_max_norm(Hadj, build_gauge_generator(space, j)), 1e-12);
  EXPECT_EQ(max_abs(build_adjusted_hamiltonian(H0, H1, P0, 0.0) - H0), 0.0);
  EXPECT_THROW(build_adjusted_hamiltonian(H0, build_analog_error(pbc(4, 2), p.alphas), P0, 1.0),
               std::invalid_argument);
}

TEST(Hamiltonian, VariantsAndParsing) {
  const auto space = pbc(4, 2);
  ModelParams p;
  p.lambda = 1.0;
  p.V = 10.0;
  const auto seq = make_sequence(SequencePreset::seventeenths);
  const auto H = build_hamiltonian(space, p, seq, HamiltonianVariant::faulty);
  const auto expected = build_ideal_hamiltonian(space, 1.0, 0.3) + build_analog_error(space, p.alphas).scaled(1.0) +
                        build_protection(space, seq, 10.0).to_operator();
  EXPECT_LT(max_abs(H - expected), 1e-14);
  EXPECT_EQ(parse_variant("adjusted"), HamiltonianVariant::adjusted);
  EXPECT_THROW(parse_variant("nope"), std::invalid_argument);
}

TEST(InitialState, NamedPatterns) {
  const auto spec4 = LatticeSpec::uniform(4, Boundary::periodic);
  auto s = named_pattern(spec4, StatePattern::staggered);
  EXPECT_EQ(s.occupations, (std::vector<int>{1, 0, 1, 0}));
  EXPECT_EQ(s.links, (std::vector<int>{+1, +1, -1, -1}));
  s = named_pattern(spec4, StatePattern::cdw);
  EXPECT_EQ(s.occupations, (std::vector<int>{1, 1, 0, 0}));
  EXPECT_EQ(s.links, (std::vector<int>{+1, -1, -1, -1}));
  const auto spec6 = LatticeSpec::uniform(6, Boundary::open);
  s = named_pattern(spec6, StatePattern::domain_wall);
  EXPECT_EQ(s.occupations, (std::vector<int>{1, 1, 1, 0, 0, 0}));
  EXPECT_EQ(s.links, (std::vector<int>{-1, +1, -1, -1, -1, -1}));
  s = named_pattern(spec6, StatePattern::staggered);
  EXPECT_EQ(s.links, (std::vector<int>{-1, -1, +1, +1, -1, -1}));
}

TEST(InitialState, BuiltStatesLieInTheTargetSector) {
  // Periodic chains need an even particle number for the uniform sector.
  for (auto pattern : {StatePattern::staggered, StatePattern::cdw, StatePattern::domain_wall}) {
    for (auto [L, b] : {std::pair{6, Boundary::open}, std::pair{4, Boundary::periodic}}) {
      const LatticeSpec spec = LatticeSpec::uniform(L, b);
      const HilbertSpace space(spec, named_pattern(spec, pattern).particle_number());
      const auto psi = build_initial_state(space, pattern);
      EXPECT_NEAR(psi.norm(), 1.0, 1e-15);
      EXPECT_EQ(build_target_projector(space).expectation(psi), 1.0);
      EXPECT_THROW(build_initial_state(HilbertSpace(spec, 1), pattern), std::invalid_argument);
    }
  }
  EXPECT_THROW(named_pattern(LatticeSpec::uniform(6, Boundary::periodic), StatePattern::staggered), SectorError);
}

TEST(InitialState, RejectsOutOfSectorPatternsWithSites) {
  const auto space = pbc(4);
  const ProductState bad{{1, 0, 1, 0}, {+1, -1, -1, -1}};
  EXPECT_EQ(violated_constraints(space.spec(), bad), (std::vector<int>{1, 2}));
  try {
    build_initial_state(space, bad);
    FAIL() << "expected SectorError";
  } catch (const SectorError& e) {
    EXPECT_EQ(e.violated_sites(), (std::vector<int>{1, 2}));
  }
  EXPECT_THROW(build_initial_state(space, ProductState{{1, 0, 1}, {1, 1, -1}}), std::invalid_argument);
}

TEST(InitialState, NonUniformTargetSector) {
  LatticeSpec spec = LatticeSpec::uniform(4, Boundary::open);
  spec.target_sector = {-1, +1, -1, +1};
  const HilbertSpace space(spec, 2);
  const auto psi = build_initial_state(space, StatePattern::staggered);
  EXPECT_EQ(build_target_projector(space).expectation(psi), 1.0);
  for (int j = 0; j < 4; ++j) {
    EXPECT_EQ(build_gauge_generator(space, j).expectation(psi), spec.target_sector[static_cast<std::size_t>(j)]);
  }
}
