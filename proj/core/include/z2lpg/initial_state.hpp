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

#include <string_view>
#include <vector>

#include "z2lpg/lattice.hpp"
#include "z2lpg/operator.hpp"

namespace z2lpg {

enum class StatePattern { staggered, cdw, domain_wall };

std::string_view to_string(StatePattern p);
StatePattern parse_pattern(std::string_view s);

/// A product basis state: occupations n_j in {0,1}, link values tau^x_j in {+1,-1}.
struct ProductState {
  std::vector<int> occupations;
  std::vector<int> links;

  int particle_number() const;
};

/// Matter pattern of a named state, with links fixed by Gauss's law so that
/// every G_j equals g_j^tar. Open chains start from the fictitious +1 left
/// link; periodic chains fix link 0 to +1 (the other solution is the global
/// link flip).
///   staggered   (1,0,1,0,...)
///   cdw         (1,1,0,0,1,1,0,0,...)
///   domain_wall first floor(L/2) sites occupied
/// L=4 periodic staggered gives links (+1,+1,-1,-1); L=6 open staggered gives
/// (-1,-1,+1,+1,-1,-1).
ProductState named_pattern(const LatticeSpec& spec, StatePattern pattern);

/// 0-based sites j where G_j != g_j^tar for the given product state.
std::vector<int> violated_constraints(const LatticeSpec& spec, const ProductState& state);

/// Normalized basis vector; throws SectorError when the state leaves the
/// target sector and std::invalid_argument when it lies outside the space's
/// particle-number sector.
StateVector build_initial_state(const HilbertSpace& space, const ProductState& state);
StateVector build_initial_state(const HilbertSpace& space, StatePattern pattern);

}  // namespace z2lpg
