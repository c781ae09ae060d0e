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

#include <stdexcept>
#include <string>
#include <vector>

namespace z2lpg {

/// A requested size exceeds a configured cap (Hilbert-space dimension,
/// dense-diagonalization size, enumeration length).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A product state handed to the state builder does not lie in the target
/// gauge sector. `violated_sites()` lists the 0-based constraint indices j
/// with G_j != g_j^tar.
class SectorError : public std::invalid_argument {
 public:
  SectorError(const std::string& what, std::vector<int> violated)
      : std::invalid_argument(what), violated_(std::move(violated)) {}
  const std::vector<int>& violated_sites() const noexcept { return violated_; }

 private:
  std::vector<int> violated_;
};

/// Lanczos stepping failed to reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace z2lpg
