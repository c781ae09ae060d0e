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

#include "z2lpg/sequence.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "z2lpg/errors.hpp"

namespace z2lpg {

CoeffSequence::CoeffSequence(std::vector<Rational> coefficients, std::string tag)
    : coeffs_(std::move(coefficients)), tag_(std::move(tag)) {
  if (coeffs_.empty()) throw std::invalid_argument("coefficient sequence is empty");
  for (const auto& c : coeffs_) {
    if (c.numerator() == 0) throw std::invalid_argument("coefficient sequence contains a zero");
  }
}

std::vector<Rational> CoeffSequence::expand(int n) const {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int j = 0; j < n; ++j) out.push_back(at(j));
  return out;
}

CoeffSequence CoeffSequence::scaled(Rational factor) const {
  std::vector<Rational> out = coeffs_;
  for (auto& c : out) c *= factor;
  return CoeffSequence(std::move(out), tag_);
}

std::string CoeffSequence::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ',';
    out += format_rational(coeffs_[i]);
  }
  return out;
}

CoeffSequence make_sequence(SequencePreset preset) {
  switch (preset) {
    case SequencePreset::seventeenths:
      return CoeffSequence({Rational(-1, 17), Rational(3, 17), Rational(-7, 17), Rational(1)},
                           "seventeenths");
    case SequencePreset::elevenths: {
      std::vector<Rational> c;
      for (int j = 1; j <= 2; ++j) c.emplace_back(6 * (j % 2 == 0 ? 1 : -1) + 5, 11);
      return CoeffSequence(std::move(c), "elevenths");
    }
    case SequencePreset::uniform:
      return CoeffSequence({Rational(1)}, "uniform");
  }
  throw std::invalid_argument("unknown sequence preset");
}

CoeffSequence make_sequence(std::vector<Rational> custom, std::string tag) {
  return CoeffSequence(std::move(custom), std::move(tag));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("not an exact rational: '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto t = trim(text);
  const auto slash = t.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(t, text));
  const auto num = parse_int(trim(t.substr(0, slash)), text);
  const auto den = parse_int(trim(t.substr(slash + 1)), text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

CoeffSequence parse_sequence(std::string_view text) {
  const auto t = trim(text);
  if (t == "seventeenths") return make_sequence(SequencePreset::seventeenths);
  if (t == "elevenths") return make_sequence(SequencePreset::elevenths);
  if (t == "uniform") return make_sequence(SequencePreset::uniform);
  std::vector<Rational> coeffs;
  std::size_t start = 0;
  while (start <= t.size()) {
    auto end = t.find(',', start);
    if (end == std::string_view::npos) end = t.size();
    coeffs.push_back(parse_rational(t.substr(start, end - start)));
    start = end + 1;
  }
  return CoeffSequence(std::move(coeffs), "custom");
}

std::vector<std::int64_t> integer_weights(const CoeffSequence& seq, int n) {
  std::int64_t scale = 1;
  for (const auto& c : seq.coefficients()) {
    const std::int64_t g = std::gcd(scale, c.denominator());
    std::int64_t next = 0;
    if (__builtin_mul_overflow(scale / g, c.denominator(), &next)) {
      throw CapacityError("coefficient denominators overflow 64-bit arithmetic");
    }
    scale = next;
  }
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const Rational c = seq.at(j);
    std::int64_t w = 0;
    if (__builtin_mul_overflow(c.numerator(), scale / c.denominator(), &w)) {
      throw CapacityError("integer weights overflow 64-bit arithmetic");
    }
    out.push_back(w);
  }
  return out;
}

namespace {

// One half-chain: every s in {-1,0,+1}^n with its weighted sum, sorted by
// (sum, code). Digit d of the base-3 code maps to s = {0, +1, -1}[d], so
// code 0 is the all-zero configuration.
struct HalfEnumeration {
  std::vector<std::pair<std::int64_t, std::uint64_t>> entries;
};

HalfEnumeration enumerate_half(const std::vector<std::int64_t>& weights, std::size_t begin,
                               std::size_t end) {
  HalfEnumeration half;
  half.entries.push_back({0, 0});
  std::uint64_t place = 1;
  for (std::size_t j = begin; j < end; ++j) {
    const auto w = weights[j];
    const auto n = half.entries.size();
    half.entries.reserve(3 * n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto [sum, code] = half.entries[k];
      half.entries.push_back({sum + w, code + place});
      half.entries.push_back({sum - w, code + 2 * place});
    }
    place *= 3;
  }
  std::sort(half.entries.begin(), half.entries.end());
  return half;
}

std::vector<int> decode(std::uint64_t code, std::size_t n) {
  std::vector<int> s(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto d = code % 3;
    s[j] = d == 0 ? 0 : (d == 1 ? +1 : -1);
    code /= 3;
  }
  return s;
}

int support(std::uint64_t code) {
  int n = 0;
  for (; code != 0; code /= 3) n += code % 3 != 0;
  return n;
}

// Sign convention: first nonzero entry is +1.
DeviationConfig normalized(DeviationConfig s) {
  const auto first = std::find_if(s.begin(), s.end(), [](int v) { return v != 0; });
  if (first != s.end() && *first < 0) {
    for (auto& v : s) v = -v;
  }
  return s;
}

struct ZeroSumResult {
  std::uint64_t zero_sum_configs = 0;  // including the all-zero configuration
  std::optional<DeviationConfig> witness;
};

// Witness choice: smallest support, then lexicographically largest
// normalized configuration.
struct WitnessSearch {
  std::size_t mid = 0;
  std::size_t L = 0;
  int best_support = std::numeric_limits<int>::max();
  std::optional<DeviationConfig> best;

  void offer(std::uint64_t code_a, std::uint64_t code_b, int s) {
    DeviationConfig v = decode(code_a, mid);
    const auto tail = decode(code_b, L - mid);
    v.insert(v.end(), tail.begin(), tail.end());
    v = normalized(std::move(v));
    if (s < best_support || (s == best_support && v > *best)) {
      best_support = s;
      best = std::move(v);
    }
  }
};

// Entries of [first, last) whose support is minimal, skipping code 0 when
// `nonzero` is set.
template <class It>
std::vector<std::uint64_t> min_support_codes(It first, It last, bool nonzero, int& min_out) {
  std::vector<std::uint64_t> out;
  min_out = std::numeric_limits<int>::max();
  for (auto it = first; it != last; ++it) {
    if (nonzero && it->second == 0) continue;
    const int s = support(it->second);
    if (s < min_out) {
      min_out = s;
      out.clear();
    }
    if (s == min_out) out.push_back(it->second);
  }
  return out;
}

ZeroSumResult zero_sum_search(const CoeffSequence& seq, int n_sites, int cap, bool want_witness) {
  if (n_sites < 1) throw std::invalid_argument("compliance needs at least one site");
  if (n_sites > cap) {
    throw CapacityError("enumeration over L=" + std::to_string(n_sites) +
                        " sites exceeds the cap of " + std::to_string(cap));
  }
  const auto weights = integer_weights(seq, n_sites);
  std::int64_t total = 0;
  for (auto w : weights) {
    if (__builtin_add_overflow(total, w < 0 ? -w : w, &total)) {
      throw CapacityError("weighted sums overflow 64-bit arithmetic");
    }
  }
  const std::size_t L = static_cast<std::size_t>(n_sites);
  const std::size_t mid = L / 2;
  const auto left = enumerate_half(weights, 0, mid);
  const auto right = enumerate_half(weights, mid, L);

  ZeroSumResult result;
  WitnessSearch search{mid, L};
  const auto& A = left.entries;
  const auto& B = right.entries;
  std::size_t i = 0;
  while (i < A.size()) {
    const std::int64_t x = A[i].first;
    std::size_t i_end = i;
    while (i_end < A.size() && A[i_end].first == x) ++i_end;
    const auto lo = std::lower_bound(B.begin(), B.end(), std::make_pair(-x, std::uint64_t{0}));
    auto hi = lo;
    while (hi != B.end() && hi->first == -x) ++hi;
    const auto ca = static_cast<std::uint64_t>(i_end - i);
    const auto cb = static_cast<std::uint64_t>(hi - lo);
    result.zero_sum_configs += ca * cb;
    if (want_witness && cb > 0) {
      const auto a_first = A.begin() + static_cast<std::ptrdiff_t>(i);
      const auto a_last = A.begin() + static_cast<std::ptrdiff_t>(i_end);
      if (x == 0) {
        // The zero config sits in both groups; pair each side's nonzero
        // entries with the other side's zero.
        int sa = 0;
        int sb = 0;
        for (auto code : min_support_codes(a_first, a_last, true, sa)) {
          if (sa <= search.best_support) search.offer(code, 0, sa);
        }
        for (auto code : min_support_codes(lo, hi, true, sb)) {
          if (sb <= search.best_support) search.offer(0, code, sb);
        }
      } else {
        int sa = 0;
        int sb = 0;
        const auto ma = min_support_codes(a_first, a_last, false, sa);
        if (sa + 1 <= search.best_support) {
          const auto mb = min_support_codes(lo, hi, false, sb);
          if (sa + sb <= search.best_support) {
            for (auto code_a : ma)
              for (auto code_b : mb) search.offer(code_a, code_b, sa + sb);
          }
        }
      }
    }
    i = i_end;
  }
  result.witness = std::move(search.best);
  return result;
}

}  // namespace

ComplianceReport is_compliant(const CoeffSequence& seq, int n_sites, int cap) {
  auto r = zero_sum_search(seq, n_sites, cap, true);
  ComplianceReport report;
  report.n_sites = n_sites;
  report.compliant = r.zero_sum_configs == 1;
  report.witness = std::move(r.witness);
  return report;
}

std::uint64_t count_resonant_configs(const CoeffSequence& seq, int n_sites, int cap) {
  return zero_sum_search(seq, n_sites, cap, false).zero_sum_configs - 1;
}

Rational resonance_fraction(const CoeffSequence& seq, int n_sites, int cap) {
  const auto count = count_resonant_configs(seq, n_sites, cap);
  std::int64_t denom = 1;
  for (int j = 0; j < n_sites; ++j) denom *= 3;
  return Rational(static_cast<std::int64_t>(count), denom);
}

}  // namespace z2lpg
