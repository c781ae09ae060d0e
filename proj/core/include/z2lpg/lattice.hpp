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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace z2lpg {

enum class Boundary { periodic, open };

std::string_view to_string(Boundary b);
Boundary parse_boundary(std::string_view s);

/// Geometry of the 1+1D chain: L matter sites and L links. Link j joins matter
/// sites j and j+1 (mod L for periodic chains). On open chains the last link
/// dangles at the right end and the constraint at site 0 sees a fictitious
/// left link frozen to +1. All indices are 0-based.
struct LatticeSpec {
  int n_matter = 4;
  Boundary boundary = Boundary::periodic;
  std::vector<int> target_sector;  // g_j^tar, one per site, each +-1

  static LatticeSpec uniform(int n_matter, Boundary boundary, int g = +1);

  int n_links() const noexcept { return n_matter; }
  /// Number of hopping bonds: L for periodic, L-1 for open.
  int n_bonds() const noexcept {
    return boundary == Boundary::periodic ? n_matter : n_matter - 1;
  }
  /// Throws std::invalid_argument on malformed specs.
  void validate() const;
};

enum class ErrorModel { analog, circuit };

std::string_view to_string(ErrorModel m);
ErrorModel parse_error_model(std::string_view s);

/// Couplings in units of J.
struct ModelParams {
  static constexpr std::array<double, 4> kDefaultAlphas{0.5110, -0.4953, 0.7696, 0.2147};

  double J = 1.0;
  double h = 0.3;
  double lambda = 0.0;
  double V = 0.0;
  std::array<double, 4> alphas = kDefaultAlphas;
  ErrorModel error_model = ErrorModel::analog;

  void validate() const;
};

/// Product basis |n_0 .. n_{L-1}> (x) |tau^x_0 .. tau^x_{L-1}>.
///
/// A basis configuration is a bit string: bit j (j < L) holds the matter
/// occupation n_j, bit L+j holds the link value with 0 <-> tau^x = +1 and
/// 1 <-> tau^x = -1. Basis states are ordered by ascending configuration
/// integer; for the unrestricted space the index equals the configuration.
/// With a particle-number sector N only configurations whose matter bits
/// have popcount N are kept, still in ascending order.
class HilbertSpace {
 public:
  using Config = std::uint64_t;
  static constexpr std::size_t kDefaultDimensionCap = std::size_t{1} << 20;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit HilbertSpace(LatticeSpec spec, std::optional<int> particle_number = std::nullopt,
                        std::size_t dimension_cap = kDefaultDimensionCap);

  const LatticeSpec& spec() const noexcept { return spec_; }
  int n_matter() const noexcept { return spec_.n_matter; }
  std::optional<int> particle_number() const noexcept { return particle_number_; }
  std::size_t dimension() const noexcept { return dimension_; }

  Config config(std::size_t index) const {
    return configs_.empty() ? static_cast<Config>(index) : configs_[index];
  }
  /// Index of a configuration, or npos when it lies outside the space.
  std::size_t index_of(Config c) const;

  int occupation(Config c, int site) const noexcept {
    return static_cast<int>((c >> site) & 1u);
  }
  /// tau^x eigenvalue of a link (+1 or -1).
  int link_value(Config c, int link) const noexcept {
    return ((c >> (spec_.n_matter + link)) & 1u) ? -1 : +1;
  }
  /// Value of the link to the left of matter site j; +1 for the fictitious
  /// link of an open chain at j = 0.
  int left_link_value(Config c, int site) const noexcept;
  int particle_count(Config c) const noexcept;

  Config matter_bit(int site) const noexcept { return Config{1} << site; }
  Config link_bit(int link) const noexcept { return Config{1} << (spec_.n_matter + link); }

  /// Encodes occupations (0/1) and link values (+-1) as a configuration.
  Config encode(const std::vector<int>& occupations, const std::vector<int>& links) const;

 private:
  LatticeSpec spec_;
  std::optional<int> particle_number_;
  std::size_t dimension_ = 0;
  std::vector<Config> configs_;  // empty for the unrestricted space
};

/// Dimension the space would have, or nullopt when it overflows 64 bits.
std::optional<std::size_t> hilbert_dimension(int n_matter, std::optional<int> particle_number);

inline HilbertSpace build_hilbert_space(const LatticeSpec& spec,
                                        std::optional<int> particle_number = std::nullopt) {
  return HilbertSpace(spec, particle_number);
}

}  // namespace z2lpg
