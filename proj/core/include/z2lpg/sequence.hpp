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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace z2lpg {

using Rational = boost::rational<std::int64_t>;

/// Periodic sequence of nonzero rational protection weights c_j.
/// Site j (0-based) uses coefficients()[j % period()].
class CoeffSequence {
 public:
  CoeffSequence(std::vector<Rational> coefficients, std::string tag);

  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  std::size_t period() const noexcept { return coeffs_.size(); }
  const std::string& tag() const noexcept { return tag_; }

  Rational at(int site) const { return coeffs_[static_cast<std::size_t>(site) % coeffs_.size()]; }
  double value(int site) const { return boost::rational_cast<double>(at(site)); }
  /// The first n coefficients of the periodic extension.
  std::vector<Rational> expand(int n) const;

  /// Same sequence with every coefficient multiplied by `factor` (nonzero).
  CoeffSequence scaled(Rational factor) const;

  /// Comma-separated "p/q" list, e.g. "-1/17,3/17,-7/17,1".
  std::string to_string() const;

 private:
  std::vector<Rational> coeffs_;
  std::string tag_;
};

enum class SequencePreset { seventeenths, elevenths, uniform };

/// seventeenths: (-1, 3, -7, 17)/17, period 4.
/// elevenths:    c_j = [6(-1)^j + 5]/11 for 1-based j, i.e. (-1/11, 1), period 2.
/// uniform:      c_j = 1.
CoeffSequence make_sequence(SequencePreset preset);
CoeffSequence make_sequence(std::vector<Rational> custom, std::string tag = "custom");

/// Accepts a preset name or a comma-separated list of rationals ("1/3", "-2", "0.25" is
/// rejected: coefficients are exact).
CoeffSequence parse_sequence(std::string_view text);
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

/// s_j = (w_j - g_j^tar)/2 in {-1, 0, +1}.
using DeviationConfig = std::vector<int>;

struct ComplianceReport {
  bool compliant = true;
  std::optional<DeviationConfig> witness;
  int n_sites = 0;
};

inline constexpr int kDefaultEnumerationCap = 24;

/// Integer weights a_j = c_j * lcm(denominators) for the first n sites.
std::vector<std::int64_t> integer_weights(const CoeffSequence& seq, int n);

/// Exhaustive compliance decision over all of {-1,0,+1}^L in exact integer
/// arithmetic (meet-in-the-middle over the two half-chains).
ComplianceReport is_compliant(const CoeffSequence& seq, int n_sites,
                              int cap = kDefaultEnumerationCap);

/// Number of nonzero s in {-1,0,+1}^L with sum_j c_j s_j = 0.
std::uint64_t count_resonant_configs(const CoeffSequence& seq, int n_sites,
                                     int cap = kDefaultEnumerationCap);

/// R = count_resonant_configs / 3^L. The denominator counts every LPG
/// eigenvalue label; dividing by 2^L instead rescales R by (3/2)^L.
Rational resonance_fraction(const CoeffSequence& seq, int n_sites,
                            int cap = kDefaultEnumerationCap);

}  // namespace z2lpg
