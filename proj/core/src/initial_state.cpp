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

#include "z2lpg/initial_state.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "z2lpg/errors.hpp"

namespace z2lpg {

std::string_view to_string(StatePattern p) {
  switch (p) {
    case StatePattern::staggered: return "staggered";
    case StatePattern::cdw: return "cdw";
    case StatePattern::domain_wall: return "domain_wall";
  }
  return "?";
}

StatePattern parse_pattern(std::string_view s) {
  if (s == "staggered") return StatePattern::staggered;
  if (s == "cdw") return StatePattern::cdw;
  if (s == "domain_wall" || s == "domain-wall") return StatePattern::domain_wall;
  throw std::invalid_argument("unknown initial state '" + std::string(s) + "'");
}

int ProductState::particle_number() const {
  return std::accumulate(occupations.begin(), occupations.end(), 0);
}

ProductState named_pattern(const LatticeSpec& spec, StatePattern pattern) {
  spec.validate();
  const int L = spec.n_matter;
  ProductState s;
  s.occupations.resize(static_cast<std::size_t>(L));
  for (int j = 0; j < L; ++j) {
    int n = 0;
    switch (pattern) {
      case StatePattern::staggered: n = j % 2 == 0; break;
      case StatePattern::cdw: n = j % 4 < 2; break;
      case StatePattern::domain_wall: n = j < L / 2; break;
    }
    s.occupations[static_cast<std::size_t>(j)] = n;
  }
  s.links.resize(static_cast<std::size_t>(L));
  const auto g = [&](int j) { return spec.target_sector[static_cast<std::size_t>(j)]; };
  const auto parity = [&](int j) { return s.occupations[static_cast<std::size_t>(j)] ? -1 : 1; };
  int left = 1;
  int start = 0;
  if (spec.boundary == Boundary::periodic) {
    s.links[0] = 1;
    left = 1;
    start = 1;
  }
  for (int j = start; j < L; ++j) {
    // g_j = (-1)^{n_j} tau_{j-1} tau_j  =>  tau_j = g_j (-1)^{n_j} tau_{j-1}
    s.links[static_cast<std::size_t>(j)] = g(j) * parity(j) * left;
    left = s.links[static_cast<std::size_t>(j)];
  }
  const auto bad = violated_constraints(spec, s);
  if (!bad.empty()) {
    throw SectorError("pattern '" + std::string(to_string(pattern)) +
                          "' admits no link configuration in the target sector",
                      bad);
  }
  return s;
}

std::vector<int> violated_constraints(const LatticeSpec& spec, const ProductState& state) {
  const int L = spec.n_matter;
  if (static_cast<int>(state.occupations.size()) != L ||
      static_cast<int>(state.links.size()) != L) {
    throw std::invalid_argument("pattern length does not match L=" + std::to_string(L));
  }
  std::vector<int> bad;
  for (int j = 0; j < L; ++j) {
    int left = 1;
    if (j > 0) {
      left = state.links[static_cast<std::size_t>(j - 1)];
    } else if (spec.boundary == Boundary::periodic) {
      left = state.links[static_cast<std::size_t>(L - 1)];
    }
    const int parity = state.occupations[static_cast<std::size_t>(j)] ? -1 : 1;
    const int G = parity * left * state.links[static_cast<std::size_t>(j)];
    if (G != spec.target_sector[static_cast<std::size_t>(j)]) bad.push_back(j);
  }
  return bad;
}

StateVector build_initial_state(const HilbertSpace& space, const ProductState& state) {
  const auto bad = violated_constraints(space.spec(), state);
  if (!bad.empty()) {
    std::string list;
    for (int j : bad) list += (list.empty() ? "" : ",") + std::to_string(j);
    throw SectorError("initial state violates gauge constraints at sites {" + list + "}", bad);
  }
  const auto c = space.encode(state.occupations, state.links);
  const auto idx = space.index_of(c);
  if (idx == HilbertSpace::npos) {
    throw std::invalid_argument("initial state has " + std::to_string(state.particle_number()) +
                                " particles, outside the space's sector");
  }
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(space.dimension()));
  psi[static_cast<Eigen::Index>(idx)] = 1.0;
  return psi;
}

StateVector build_initial_state(const HilbertSpace& space, StatePattern pattern) {
  return build_initial_state(space, named_pattern(space.spec(), pattern));
}

}  // namespace z2lpg
