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

#include "z2lpg/model.hpp"

#include <stdexcept>
#include <string>

namespace z2lpg {

namespace {

using Config = HilbertSpace::Config;
using Triplets = std::vector<Eigen::Triplet<Complex>>;

void push(const HilbertSpace& space, Triplets& out, Config to, std::size_t from, Complex value) {
  if (value == Complex(0.0, 0.0)) return;
  const auto row = space.index_of(to);
  if (row == HilbertSpace::npos) {
    throw std::logic_error("operator leaves the particle-number sector");
  }
  out.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(from), value);
}

SparseMatrix from_triplets(const HilbertSpace& space, const Triplets& t) {
  const auto d = static_cast<Eigen::Index>(space.dimension());
  SparseMatrix m(d, d);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

int bond_right_site(const HilbertSpace& space, int bond) {
  return (bond + 1) % space.n_matter();
}

// Local 2x2 matrices on a link in the tau^x eigenbasis, indexed
// [new bit][old bit] with bit 0 <-> tau^x = +1.
using Link2 = std::array<std::array<Complex, 2>, 2>;

constexpr Link2 kTauPlus{{{0.5, -0.5}, {0.5, -0.5}}};
constexpr Link2 kTauMinus{{{0.5, 0.5}, {-0.5, -0.5}}};

}  // namespace

bool bond_in_set(int bond, BondSet set) noexcept {
  switch (set) {
    case BondSet::all: return true;
    case BondSet::even: return bond % 2 == 0;
    case BondSet::odd: return bond % 2 == 1;
  }
  return false;
}

OperatorMatrix build_gauge_hopping(const HilbertSpace& space, double J, BondSet bonds) {
  Triplets t;
  const int n_bonds = space.spec().n_bonds();
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const Config c = space.config(i);
    for (int b = 0; b < n_bonds; ++b) {
      if (!bond_in_set(b, bonds)) continue;
      const int l = b, r = bond_right_site(space, b);
      const int nl = space.occupation(c, l), nr = space.occupation(c, r);
      if (nl == nr) continue;
      // a_l^dag a_r (nr=1) or its conjugate (nl=1); both flip link b.
      const Config to = c ^ space.matter_bit(l) ^ space.matter_bit(r) ^ space.link_bit(b);
      push(space, t, to, i, Complex(-J, 0.0));
    }
  }
  return OperatorMatrix(from_triplets(space, t), true);
}

DiagonalOperator build_field_term(const HilbertSpace& space, double h) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(space.dimension()));
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const Config c = space.config(i);
    int sum = 0;
    for (int l = 0; l < space.spec().n_links(); ++l) sum += space.link_value(c, l);
    d[static_cast<Eigen::Index>(i)] = -h * sum;
  }
  return DiagonalOperator(std::move(d));
}

OperatorMatrix build_ideal_hamiltonian(const HilbertSpace& space, double J, double h) {
  return build_gauge_hopping(space, J) + build_field_term(space, h).to_operator();
}

namespace {

void check_site(const HilbertSpace& space, int site) {
  if (site < 0 || site >= space.n_matter()) {
    throw std::out_of_range("site index " + std::to_string(site) + " outside [0, " +
                            std::to_string(space.n_matter()) + ")");
  }
}

int generator_value(const HilbertSpace& space, Config c, int site) {
  const int parity = space.occupation(c, site) ? -1 : 1;
  return parity * space.left_link_value(c, site) * space.link_value(c, site);
}

int lpg_value(const HilbertSpace& space, Config c, int site, int g_target) {
  return space.left_link_value(c, site) * space.link_value(c, site) +
         2 * g_target * space.occupation(c, site);
}

}  // namespace

DiagonalOperator build_gauge_generator(const HilbertSpace& space, int site) {
  check_site(space, site);
  Eigen::VectorXd d(static_cast<Eigen::Index>(space.dimension()));
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    d[static_cast<Eigen::Index>(i)] = generator_value(space, space.config(i), site);
  }
  return DiagonalOperator(std::move(d));
}

DiagonalOperator build_lpg(const HilbertSpace& space, int site, int g_target) {
  check_site(space, site);
  if (g_target != 1 && g_target != -1) throw std::invalid_argument("g_target must be +-1");
  Eigen::VectorXd d(static_cast<Eigen::Index>(space.dimension()));
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    d[static_cast<Eigen::Index>(i)] = lpg_value(space, space.config(i), site, g_target);
  }
  return DiagonalOperator(std::move(d));
}

DiagonalOperator build_protection(const HilbertSpace& space, const CoeffSequence& seq, double V) {
  const auto& g = space.spec().target_sector;
  const int L = space.n_matter();
  std::vector<double> c(static_cast<std::size_t>(L));
  for (int j = 0; j < L; ++j) c[static_cast<std::size_t>(j)] = seq.value(j);
  Eigen::VectorXd d(static_cast<Eigen::Index>(space.dimension()));
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const Config cfg = space.config(i);
    double acc = 0.0;
    for (int j = 0; j < L; ++j) {
      acc += c[static_cast<std::size_t>(j)] * (lpg_value(space, cfg, j, g[static_cast<std::size_t>(j)]) -
                                               g[static_cast<std::size_t>(j)]);
    }
    d[static_cast<Eigen::Index>(i)] = V * acc;
  }
  return DiagonalOperator(std::move(d));
}

OperatorMatrix build_analog_error(const HilbertSpace& space, const std::array<double, 4>& alphas) {
  const auto [a1, a2, a3, a4] = alphas;
  Link2 dressing{};
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) dressing[p][q] = a1 * kTauPlus[p][q] + a2 * kTauMinus[p][q];
  }
  Triplets forward;  // a_l^dag (a1 tau^+ + a2 tau^-) a_r
  Triplets flips;    // (a3 n_l - a4 n_r) tau^z
  const int n_bonds = space.spec().n_bonds();
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const Config c = space.config(i);
    for (int b = 0; b < n_bonds; ++b) {
      const int l = b, r = bond_right_site(space, b);
      const int nl = space.occupation(c, l), nr = space.occupation(c, r);
      const Config link = space.link_bit(b);
      if (nl == 0 && nr == 1) {
        const int old_bit = (c & link) ? 1 : 0;
        const Config moved = c ^ space.matter_bit(l) ^ space.matter_bit(r);
        for (int new_bit = 0; new_bit < 2; ++new_bit) {
          const Config to = new_bit == old_bit ? moved : (moved ^ link);
          push(space, forward, to, i, dressing[new_bit][old_bit]);
        }
      }
      const double amp = a3 * nl - a4 * nr;
      if (amp != 0.0) push(space, flips, c ^ link, i, Complex(amp, 0.0));
    }
  }
  SparseMatrix f = from_triplets(space, forward);
  SparseMatrix fa = f.adjoint();
  SparseMatrix h = f + fa + from_triplets(space, flips);
  return OperatorMatrix(std::move(h), true);
}

OperatorMatrix build_link_flips(const HilbertSpace& space) {
  Triplets t;
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const Config c = space.config(i);
    for (int l = 0; l < space.spec().n_links(); ++l) {
      push(space, t, c ^ space.link_bit(l), i, Complex(1.0, 0.0));
    }
  }
  return OperatorMatrix(from_triplets(space, t), true);
}

OperatorMatrix build_unassisted_hopping(const HilbertSpace& space, BondSet bonds) {
  Triplets t;
  const int n_bonds = space.spec().n_bonds();
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const Config c = space.config(i);
    for (int b = 0; b < n_bonds; ++b) {
      if (!bond_in_set(b, bonds)) continue;
      const int l = b, r = bond_right_site(space, b);
      if (space.occupation(c, l) == space.occupation(c, r)) continue;
      push(space, t, c ^ space.matter_bit(l) ^ space.matter_bit(r), i, Complex(1.0, 0.0));
    }
  }
  return OperatorMatrix(from_triplets(space, t), true);
}

OperatorMatrix build_circuit_error(const HilbertSpace& space) {
  return build_link_flips(space) + build_unassisted_hopping(space);
}

OperatorMatrix build_error(const HilbertSpace& space, const ModelParams& params) {
  return params.error_model == ErrorModel::analog ? build_analog_error(space, params.alphas)
                                                  : build_circuit_error(space);
}

DiagonalOperator build_target_projector(const HilbertSpace& space) {
  const auto& g = space.spec().target_sector;
  Eigen::VectorXd d(static_cast<Eigen::Index>(space.dimension()));
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const Config c = space.config(i);
    bool inside = true;
    for (int j = 0; j < space.n_matter() && inside; ++j) {
      inside = generator_value(space, c, j) == g[static_cast<std::size_t>(j)];
    }
    d[static_cast<Eigen::Index>(i)] = inside ? 1.0 : 0.0;
  }
  return DiagonalOperator(std::move(d));
}

OperatorMatrix build_adjusted_hamiltonian(const OperatorMatrix& H0, const OperatorMatrix& H1,
                                          const DiagonalOperator& P0, double lambda) {
  if (H0.dimension() != H1.dimension() || H0.dimension() != P0.dimension()) {
    throw std::invalid_argument("dimension mismatch in adjusted Hamiltonian");
  }
  const auto& h1 = H1.sparse();
  Triplets t;
  for (Eigen::Index i = 0; i < h1.outerSize(); ++i) {
    if (P0[static_cast<std::size_t>(i)] == 0.0) continue;
    for (SparseMatrix::InnerIterator it(h1, i); it; ++it) {
      if (P0[static_cast<std::size_t>(it.col())] == 0.0) continue;
      t.emplace_back(it.row(), it.col(), lambda * it.value());
    }
  }
  const auto d = static_cast<Eigen::Index>(H0.dimension());
  SparseMatrix sandwich(d, d);
  sandwich.setFromTriplets(t.begin(), t.end());
  return OperatorMatrix(SparseMatrix(H0.sparse() + sandwich), H0.hermitian() && H1.hermitian());
}

std::string_view to_string(HamiltonianVariant v) {
  switch (v) {
    case HamiltonianVariant::faulty: return "faulty";
    case HamiltonianVariant::adjusted: return "adjusted";
    case HamiltonianVariant::ideal: return "ideal";
  }
  return "?";
}

HamiltonianVariant parse_variant(std::string_view s) {
  if (s == "faulty") return HamiltonianVariant::faulty;
  if (s == "adjusted") return HamiltonianVariant::adjusted;
  if (s == "ideal") return HamiltonianVariant::ideal;
  throw std::invalid_argument("unknown Hamiltonian variant '" + std::string(s) + "'");
}

OperatorMatrix build_hamiltonian(const HilbertSpace& space, const ModelParams& params,
                                 const CoeffSequence& seq, HamiltonianVariant variant) {
  params.validate();
  OperatorMatrix H0 = build_ideal_hamiltonian(space, params.J, params.h);
  switch (variant) {
    case HamiltonianVariant::ideal:
      return H0;
    case HamiltonianVariant::adjusted:
      return build_adjusted_hamiltonian(H0, build_error(space, params), build_target_projector(space),
                                        params.lambda);
    case HamiltonianVariant::faulty:
      break;
  }
  OperatorMatrix H = H0;
  if (params.lambda != 0.0) H = H + build_error(space, params).scaled(params.lambda);
  if (params.V != 0.0) H = H + build_protection(space, seq, params.V).to_operator();
  return H;
}

}  // namespace z2lpg
