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

#include "z2lpg/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "z2lpg/errors.hpp"

namespace z2lpg {

std::string_view to_string(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "open";
}

Boundary parse_boundary(std::string_view s) {
  if (s == "periodic" || s == "pbc") return Boundary::periodic;
  if (s == "open" || s == "obc") return Boundary::open;
  throw std::invalid_argument("unknown boundary '" + std::string(s) + "'");
}

std::string_view to_string(ErrorModel m) {
  return m == ErrorModel::analog ? "analog" : "circuit";
}

ErrorModel parse_error_model(std::string_view s) {
  if (s == "analog") return ErrorModel::analog;
  if (s == "circuit") return ErrorModel::circuit;
  throw std::invalid_argument("unknown error model '" + std::string(s) + "'");
}

LatticeSpec LatticeSpec::uniform(int n_matter, Boundary boundary, int g) {
  LatticeSpec spec{n_matter, boundary, std::vector<int>(n_matter > 0 ? n_matter : 0, g)};
  spec.validate();
  return spec;
}

void LatticeSpec::validate() const {
  if (n_matter < 2) throw std::invalid_argument("lattice needs at least 2 matter sites");
  if (n_matter > 31) throw CapacityError("lattice with more than 31 matter sites");
  if (static_cast<int>(target_sector.size()) != n_matter) {
    throw std::invalid_argument("target sector has " + std::to_string(target_sector.size()) +
                                " entries, expected " + std::to_string(n_matter));
  }
  for (int g : target_sector) {
    if (g != 1 && g != -1) throw std::invalid_argument("target sector entries must be +1 or -1");
  }
}

void ModelParams::validate() const {
  if (!(J > 0.0)) throw std::invalid_argument("J must be positive");
  for (double x : {h, lambda, V}) {
    if (!std::isfinite(x)) throw std::invalid_argument("couplings must be finite");
  }
  if (error_model == ErrorModel::analog) {
    double sum = 0.0;
    for (double a : alphas) sum += a;
    if (std::abs(sum - 1.0) > 1e-3) {
      throw std::invalid_argument("analog error weights must sum to 1 (got " +
                                  std::to_string(sum) + ")");
    }
  }
}

std::optional<std::size_t> hilbert_dimension(int n_matter, std::optional<int> particle_number) {
  if (n_matter < 0 || n_matter > 31) return std::nullopt;
  std::size_t links = std::size_t{1} << n_matter;
  if (!particle_number) return links * links;
  const int n = *particle_number;
  if (n < 0 || n > n_matter) return std::size_t{0};
  std::size_t binom = 1;
  for (int k = 1; k <= n; ++k) binom = binom * static_cast<std::size_t>(n_matter - n + k) / k;
  return binom * links;
}

HilbertSpace::HilbertSpace(LatticeSpec spec, std::optional<int> particle_number,
                           std::size_t dimension_cap)
    : spec_(std::move(spec)), particle_number_(particle_number) {
  spec_.validate();
  const int L = spec_.n_matter;
  if (particle_number_ && (*particle_number_ < 0 || *particle_number_ > L)) {
    throw std::invalid_argument("particle number " + std::to_string(*particle_number_) +
                                " outside [0, " + std::to_string(L) + "]");
  }
  const auto dim = hilbert_dimension(L, particle_number_);
  if (!dim || *dim > dimension_cap) {
    throw CapacityError("Hilbert space dimension for L=" + std::to_string(L) +
                        " exceeds the cap of " + std::to_string(dimension_cap));
  }
  dimension_ = *dim;
  if (!particle_number_) return;

  configs_.reserve(dimension_);
  const Config matter_mask = (Config{1} << L) - 1;
  const Config full = Config{1} << (2 * L);
  // Ascending order: link bits are the high bits, so iterate links outermost.
  for (Config links = 0; links < full; links += (Config{1} << L)) {
    for (Config m = 0; m <= matter_mask; ++m) {
      if (std::popcount(m) == *particle_number_) configs_.push_back(links | m);
    }
  }
}

std::size_t HilbertSpace::index_of(Config c) const {
  if (configs_.empty()) {
    return c < dimension_ ? static_cast<std::size_t>(c) : npos;
  }
  auto it = std::lower_bound(configs_.begin(), configs_.end(), c);
  if (it == configs_.end() || *it != c) return npos;
  return static_cast<std::size_t>(it - configs_.begin());
}

int HilbertSpace::left_link_value(Config c, int site) const noexcept {
  if (site > 0) return link_value(c, site - 1);
  if (spec_.boundary == Boundary::open) return +1;
  return link_value(c, spec_.n_matter - 1);
}

int HilbertSpace::particle_count(Config c) const noexcept {
  const Config matter_mask = (Config{1} << spec_.n_matter) - 1;
  return std::popcount(c & matter_mask);
}

HilbertSpace::Config HilbertSpace::encode(const std::vector<int>& occupations,
                                          const std::vector<int>& links) const {
  const int L = spec_.n_matter;
  if (static_cast<int>(occupations.size()) != L || static_cast<int>(links.size()) != L) {
    throw std::invalid_argument("pattern length does not match L=" + std::to_string(L));
  }
  Config c = 0;
  for (int j = 0; j < L; ++j) {
    if (occupations[j] != 0 && occupations[j] != 1) {
      throw std::invalid_argument("occupations must be 0 or 1");
    }
    if (links[j] != 1 && links[j] != -1) throw std::invalid_argument("link values must be +-1");
    if (occupations[j]) c |= matter_bit(j);
    if (links[j] == -1) c |= link_bit(j);
  }
  return c;
}

}  // namespace z2lpg
